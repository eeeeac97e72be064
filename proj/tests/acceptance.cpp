// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "bmono/selftest.hpp"

#include <iostream>

int main() {
  bool all = true;
  bmono::run_acceptance([&](const bmono::CriterionResult& c) {
    all = all && c.pass;
    std::cout << bmono::format_result(c) << std::endl;
  });
  std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
  return all ? 0 : 1;
}
