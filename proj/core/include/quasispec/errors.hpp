#pragma once

#include <stdexcept>
#include <string>

namespace quasispec {

// Every failure raised by the library derives from Error. ConfigError marks
// inputs that violate a documented precondition; NumericalError marks a
// computation that could not reach its accuracy target.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

#define QUASISPEC_DEFINE_ERROR(Name, Base)        \
  class Name : public Base {                      \
   public:                                        \
    explicit Name(const std::string& what)        \
        : Base(std::string(#Name ": ") + what) {} \
  }

// Configuration / precondition failures.
QUASISPEC_DEFINE_ERROR(TruncationTooSmall, ConfigError);
QUASISPEC_DEFINE_ERROR(DimensionMismatch, ConfigError);
QUASISPEC_DEFINE_ERROR(DegenerateDiabatic, ConfigError);
QUASISPEC_DEFINE_ERROR(GridTooCoarse, ConfigError);
QUASISPEC_DEFINE_ERROR(TailsNotDecayed, ConfigError);
QUASISPEC_DEFINE_ERROR(MemoryCeiling, ConfigError);
QUASISPEC_DEFINE_ERROR(NoBracket, ConfigError);
QUASISPEC_DEFINE_ERROR(HorizonTooShort, ConfigError);
QUASISPEC_DEFINE_ERROR(ConfigInvalid, ConfigError);
QUASISPEC_DEFINE_ERROR(NonPositiveFrequency, ConfigError);

// Numerical failures.
QUASISPEC_DEFINE_ERROR(NoConvergence, NumericalError);
QUASISPEC_DEFINE_ERROR(NearPole, NumericalError);
QUASISPEC_DEFINE_ERROR(DegenerateGap, NumericalError);
QUASISPEC_DEFINE_ERROR(TailNotConverged, NumericalError);
QUASISPEC_DEFINE_ERROR(ZeroDenominator, NumericalError);
QUASISPEC_DEFINE_ERROR(ZeroReferenceGamma, NumericalError);
QUASISPEC_DEFINE_ERROR(IntegratorFailure, NumericalError);
QUASISPEC_DEFINE_ERROR(SteadyStateNotReached, NumericalError);
QUASISPEC_DEFINE_ERROR(PointFailure, NumericalError);

#undef QUASISPEC_DEFINE_ERROR

}  // namespace quasispec
