#ifndef MODLIE_ERRORS_HPP
#define MODLIE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modlie {

// Base class of every failure reported by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different primes were combined.
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

// Cartan matrix rejected at construction (diagonal outside {0,2}, bad shape,
// parity inconsistent with the diagonal, ...).
class InvalidCartan : public Error {
 public:
  using Error::Error;
};

class SingularCartanMatrix : public Error {
 public:
  using Error::Error;
};

class NonTerminated : public Error {
 public:
  using Error::Error;
};

class NoUniqueMaximum : public Error {
 public:
  using Error::Error;
};

class NotIsotropic : public Error {
 public:
  using Error::Error;
};

class MixedWeight : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class HeightLimitExceeded : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  // Message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

}  // namespace modlie

#endif  // MODLIE_ERRORS_HPP
