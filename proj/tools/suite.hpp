#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadinv::suite {

struct Options {
  std::uint64_t seed = 1;
  long cover_samples = 100000;
  std::vector<int> only;  // criterion ids to run; empty runs all
};

struct Check {
  int id = 0;
  std::string name;
  bool pass = false;
  bool inconclusive = false;  // some entry stayed Inconclusive
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
};

std::vector<Check> run(const Options& opt);

// "PASS 3 good critical exponent (0.01 s): ..."
std::string line(const Check& c);

}  // namespace quadinv::suite
