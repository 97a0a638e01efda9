#ifndef QLOGIC_REPORT_HPP
#define QLOGIC_REPORT_HPP

#include <string>
#include <vector>

namespace qlogic {

// Outcome of a randomized or enumerated property check. Witnesses describe
// the first few failures; `trials` counts individual assertions made.
struct CheckReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::vector<std::string> witnesses;

  bool ok() const { return failures == 0; }

  void pass() { ++trials; }

  void fail(const std::string& witness) {
    ++trials;
    ++failures;
    if (witnesses.size() < 8) witnesses.push_back(witness);
  }

  void check(bool cond, const std::string& witness) {
    if (cond) pass(); else fail(witness);
  }
};

}  // namespace qlogic

#endif
