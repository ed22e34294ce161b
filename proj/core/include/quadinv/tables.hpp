#pragma once

#include <string>

#include "quadinv/invariants.hpp"

namespace quadinv {

// Columns: index..., value, status, witness.
std::string to_csv(const DTable& t);
std::string to_csv(const XTable& t);
// Deterministic JSON (sorted keys, fixed indentation).
std::string to_json(const DTable& t);
std::string to_json(const XTable& t);

bool any_inconclusive(const DTable& t);
bool any_inconclusive(const XTable& t);

}  // namespace quadinv
