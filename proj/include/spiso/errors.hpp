#ifndef SPISO_ERRORS_HPP
#define SPISO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spiso {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad inputs: malformed files, invariant violations, incompatible shapes.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Numerical failures: singular matrices, failed factorizations.
struct NumericalError : Error {
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

}  // namespace spiso

#endif
