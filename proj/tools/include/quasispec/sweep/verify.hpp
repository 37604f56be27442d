#pragma once

// Self-check suite behind `quasispec verify`. Each check compares a library
// result against an independent reference and reports the measured deviation
// next to its tolerance.

#include <iosfwd>
#include <string>
#include <vector>

#include "quasispec/bessel.hpp"

namespace quasispec::sweep {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;  // error text when the check threw
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// `bessel` replaces the library Bessel routine in every analytic
/// evaluation, which lets tests inject a faulty implementation.
VerifyReport verify(VerifyLevel level, BesselFn bessel = bessel_j, std::ostream* log = nullptr);

}  // namespace quasispec::sweep
