#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cobweb {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (bad label, bad
/// vertex, mismatched posets, malformed input).
class domain_error : public error {
 public:
  using error::error;
};

/// The requested truncation exceeds the configured element guard.
class size_limit_error : public error {
 public:
  size_limit_error(const std::string& what, std::size_t limit)
      : error(what + " (element limit " + std::to_string(limit) + ")"),
        limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// Inversion hit a diagonal entry that is not a unit of the value ring.
class singular_error : public error {
 public:
  using error::error;
};

}  // namespace cobweb
