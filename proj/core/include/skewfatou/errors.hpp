#pragma once

#include <stdexcept>
#include <string>

namespace skewfatou {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SKEWFATOU_DEFINE_ERROR(Name)                    \
  class Name : public Error {                           \
   public:                                              \
    explicit Name(const std::string& what)              \
        : Error(std::string(#Name) + ": " + what) {}    \
  }

// map-spec parsing / validation
SKEWFATOU_DEFINE_ERROR(MalformedSpec);
SKEWFATOU_DEFINE_ERROR(DegreeMismatch);
SKEWFATOU_DEFINE_ERROR(NotMonic);
SKEWFATOU_DEFINE_ERROR(DegreeTooLow);

// numerics
SKEWFATOU_DEFINE_ERROR(Overflow);
SKEWFATOU_DEFINE_ERROR(NoConvergence);
SKEWFATOU_DEFINE_ERROR(InvalidArgument);

// sets
SKEWFATOU_DEFINE_ERROR(AmbientMismatch);
SKEWFATOU_DEFINE_ERROR(PeriodTooLarge);

// current_link
SKEWFATOU_DEFINE_ERROR(BoundaryTooClose);
SKEWFATOU_DEFINE_ERROR(HypothesisUnmet);
SKEWFATOU_DEFINE_ERROR(PieceNotSeparable);
SKEWFATOU_DEFINE_ERROR(InsufficientDepth);

// gallery
SKEWFATOU_DEFINE_ERROR(UnknownExample);

#undef SKEWFATOU_DEFINE_ERROR

}  // namespace skewfatou
