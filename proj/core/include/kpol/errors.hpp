#pragma once

#include <stdexcept>
#include <string>

namespace kpol {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define KPOL_DEFINE_ERROR(Name)                  \
  struct Name : Error {                          \
    explicit Name(const std::string& what_arg)   \
        : Error(#Name ": " + what_arg) {}        \
  }

KPOL_DEFINE_ERROR(ArityMismatch);
KPOL_DEFINE_ERROR(ZeroPolynomial);
KPOL_DEFINE_ERROR(BothZero);
KPOL_DEFINE_ERROR(InvalidRange);
KPOL_DEFINE_ERROR(NotLinearInLastVar);
KPOL_DEFINE_ERROR(LeadingCoeffVanishes);
KPOL_DEFINE_ERROR(DimensionMismatch);
KPOL_DEFINE_ERROR(ParseError);
KPOL_DEFINE_ERROR(NotPlainSum);
KPOL_DEFINE_ERROR(SplitMismatch);
KPOL_DEFINE_ERROR(KTooSmall);
KPOL_DEFINE_ERROR(DegenerateDimensions);
KPOL_DEFINE_ERROR(UnsupportedK);
KPOL_DEFINE_ERROR(UnsupportedDegree);
KPOL_DEFINE_ERROR(EmptyAxis);
KPOL_DEFINE_ERROR(CoincidentCurves);
KPOL_DEFINE_ERROR(InconsistentOrderType);
KPOL_DEFINE_ERROR(IndexOutOfRange);
KPOL_DEFINE_ERROR(UnknownSolver);
KPOL_DEFINE_ERROR(InsufficientData);
KPOL_DEFINE_ERROR(NonPositive);

#undef KPOL_DEFINE_ERROR

}  // namespace kpol
