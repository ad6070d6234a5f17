#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bopgraph {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: parse failures, invalid graphs or labels,
/// out-of-domain parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A linear system was too ill-conditioned to solve, or a quantity that must
/// be strictly positive underflowed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A class has too few seeds for within-class betweenness (its numerator is
/// identically zero).
class DegenerateClassError : public Error {
 public:
  DegenerateClassError(int class_id, const std::string& what)
      : Error(what), class_id_(class_id) {}
  int class_id() const noexcept { return class_id_; }

 private:
  int class_id_;
};

/// Receives non-fatal diagnostics. An empty sink discards them.
using WarningSink = std::function<void(std::string_view)>;

/// A sink that prints "warning: <message>" lines to stderr.
WarningSink stderr_warnings();

inline void warn(const WarningSink& sink, std::string_view message) {
  if (sink) sink(message);
}

}  // namespace bopgraph
