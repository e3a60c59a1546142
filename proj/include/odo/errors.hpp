#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odo {

/// Base class for every error raised by the library.  The CLI maps the
/// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (operators, polynomials, cache files, configs).
class ParseError : public Error {
   public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

/// A documented precondition or postcondition was violated.
class ContractError : public Error {
   public:
    using Error::Error;
};

/// A computation exceeded its configured budget.
class ResourceError : public Error {
   public:
    using Error::Error;
};

}  // namespace odo
