#ifndef RESYM_REPORT_HPP
#define RESYM_REPORT_HPP

#include <string>
#include <vector>

namespace resym {

/// One named pass/fail check with its measured residual.
struct Check {
  std::string name;
  bool passed;
  double residual;
  double tolerance;
  bool asserted = true;  // false = recorded for diagnosis, never fatal
};

struct VerificationReport {
  std::vector<Check> checks;

  bool all_passed() const {
    for (const Check& c : checks)
      if (c.asserted && !c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const Check& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace resym

#endif
