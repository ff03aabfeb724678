#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

enum class ErrorKind {
  precondition,   // invalid argument or configuration
  domain,         // argument outside the domain of a formula
  resolution,     // grid too coarse for the requested computation
  singularity,    // kernel evaluated too close to a pole
  tail_leak,      // function does not decay at the grid ends
  truncation,     // improper integral tail too large
  convergence,    // quadrature could not reach the requested accuracy
  search_failure, // iterative search exceeded its cap
  undefined_ratio // ratio with vanishing denominator
};

const char* to_string(ErrorKind kind) noexcept;

/// Exception carrying a category so that callers (C API, CLI) can map it
/// onto status codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by the caller's input rather than numerics.
  bool is_input_error() const noexcept {
    return kind_ == ErrorKind::precondition || kind_ == ErrorKind::domain;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::precondition, what);
}

}  // namespace hsp
