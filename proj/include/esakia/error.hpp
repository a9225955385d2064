#pragma once

#include <stdexcept>
#include <string>

namespace esakia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ESAKIA_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

ESAKIA_DEFINE_ERROR(DuplicateElement);
ESAKIA_DEFINE_ERROR(AntisymmetryViolation);
ESAKIA_DEFINE_ERROR(UnknownElement);
ESAKIA_DEFINE_ERROR(InvalidMap);
ESAKIA_DEFINE_ERROR(TooLarge);
ESAKIA_DEFINE_ERROR(NotALattice);
ESAKIA_DEFINE_ERROR(NotDistributive);
ESAKIA_DEFINE_ERROR(NotAPMorphism);
ESAKIA_DEFINE_ERROR(NotAHomomorphism);
ESAKIA_DEFINE_ERROR(NotStrict);
ESAKIA_DEFINE_ERROR(NotEtale);
ESAKIA_DEFINE_ERROR(InvalidPresheaf);
ESAKIA_DEFINE_ERROR(CodomainMismatch);
ESAKIA_DEFINE_ERROR(DomainMismatch);
ESAKIA_DEFINE_ERROR(BaseMismatch);

#undef ESAKIA_DEFINE_ERROR

}  // namespace esakia
