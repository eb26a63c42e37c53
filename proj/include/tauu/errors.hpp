#pragma once

#include <stdexcept>
#include <string>

namespace tauu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TAUU_DECLARE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

TAUU_DECLARE_ERROR(InvalidSpec);
TAUU_DECLARE_ERROR(RingAxiomViolation);
TAUU_DECLARE_ERROR(RangeError);
TAUU_DECLARE_ERROR(InvalidCoordinate);
TAUU_DECLARE_ERROR(InvalidPair);
TAUU_DECLARE_ERROR(NotFactorable);
TAUU_DECLARE_ERROR(NotClassifiable);
TAUU_DECLARE_ERROR(InvalidRefinement);
TAUU_DECLARE_ERROR(InvalidTarget);
TAUU_DECLARE_ERROR(FixpointFailure);
TAUU_DECLARE_ERROR(InvalidInput);
TAUU_DECLARE_ERROR(NotProjectable);
TAUU_DECLARE_ERROR(UnknownTheorem);
TAUU_DECLARE_ERROR(ParseError);

#undef TAUU_DECLARE_ERROR

}  // namespace tauu
