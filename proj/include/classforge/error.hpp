#ifndef CLASSFORGE_ERROR_HPP
#define CLASSFORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace classforge {

/* Base class for every error raised by the library. */
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/* An operation was called outside its documented domain. */
class PreconditionError : public Error {
public:
  using Error::Error;
};

/* A bounded-effort computation ran out of budget. The answer is unknown,
 * never wrong. */
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/* Two operands live in different ambient objects (discriminant, curve,
 * modulus). */
class MismatchError : public Error {
public:
  using Error::Error;
};

/* A certificate's defining condition failed (e.g. coprimality, or a
 * multiplicity not divisible by m). */
class CertificateError : public Error {
public:
  using Error::Error;
};

} // namespace classforge

#endif
