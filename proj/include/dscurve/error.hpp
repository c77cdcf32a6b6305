#ifndef DSCURVE_ERROR_HPP
#define DSCURVE_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dsc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its contract (bad parameters).
class PreconditionError : public Error {
   public:
    using Error::Error;
};

/// Malformed text input (polynomial strings, curve specs).
class ParseError : public Error {
   public:
    using Error::Error;
};

/// Work would exceed the desk-scale limits the library enforces.
class SizeLimitError : public Error {
   public:
    using Error::Error;
};

/// Input data is not consistent with any curve; carries the first failing index.
class InconsistentError : public Error {
   public:
    InconsistentError(const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : Error(index ? what + " (first failing index " + std::to_string(*index) + ")" : what),
          index_(index) {}
    std::optional<std::size_t> index() const noexcept { return index_; }

   private:
    std::optional<std::size_t> index_;
};

/// An internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public Error {
   public:
    using Error::Error;
};

}  // namespace dsc

#endif
