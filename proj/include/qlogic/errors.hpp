#ifndef QLOGIC_ERRORS_HPP
#define QLOGIC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace qlogic {

// Base of all validation errors. `code` is stable and machine-readable; the
// what() string prepends it to the human-readable detail.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& detail)
      : std::runtime_error(c + ": " + detail), code(std::move(c)) {}
};

#define QLOGIC_DEFINE_ERROR(NAME)                 \
  struct NAME : Error {                           \
    explicit NAME(const std::string& detail)      \
        : Error(#NAME, detail) {}                 \
  }

QLOGIC_DEFINE_ERROR(NonHermitian);
QLOGIC_DEFINE_ERROR(NonProjection);
QLOGIC_DEFINE_ERROR(NonCommuting);
QLOGIC_DEFINE_ERROR(NotComparable);
QLOGIC_DEFINE_ERROR(NotInContext);
QLOGIC_DEFINE_ERROR(PosetTooLarge);
QLOGIC_DEFINE_ERROR(VariantMismatch);
QLOGIC_DEFINE_ERROR(PosetNotDownClosed);
QLOGIC_DEFINE_ERROR(CapExceeded);
QLOGIC_DEFINE_ERROR(DoesNotReflect);
QLOGIC_DEFINE_ERROR(NotInImage);
QLOGIC_DEFINE_ERROR(PosetNotClosed);
QLOGIC_DEFINE_ERROR(PreconditionViolated);
QLOGIC_DEFINE_ERROR(BadInput);

#undef QLOGIC_DEFINE_ERROR

}  // namespace qlogic

#endif
