#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace secant {

/// Base of every error the library throws. `name()` is the stable
/// identifier surfaced by the CLI (e.g. "SecantViolated").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual std::string_view name() const noexcept = 0;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view name() const noexcept override { return "InvalidArgument"; }
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view name() const noexcept override { return "DimensionMismatch"; }
};

}  // namespace secant
