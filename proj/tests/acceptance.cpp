// One PASS/FAIL line per acceptance criterion; exit status 0 only if all pass.
#include <iostream>

#include "suite.hpp"

int main() {
  bool ok = true;
  for (const auto& c : quadinv::suite::run({})) {
    std::cout << quadinv::suite::line(c) << std::endl;
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}
