#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace teff {

enum class ErrorKind {
  Syntax,
  InvalidPotential,
  Domain,
  NoClassicalRegion,
  MultipleMaxima,
  Divergent,
  NoBoundState,
  NoConvergence,
  LambdaTooSmall,
  BracketMiss,
  NodeCountMismatch,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::InvalidPotential: return "invalid potential";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::NoClassicalRegion: return "no classical region";
    case ErrorKind::MultipleMaxima: return "multiple maxima";
    case ErrorKind::Divergent: return "divergent";
    case ErrorKind::NoBoundState: return "no bound state";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::LambdaTooSmall: return "lambda too small";
    case ErrorKind::BracketMiss: return "bracket miss";
    case ErrorKind::NodeCountMismatch: return "node count mismatch";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

/// Every failure raised by the library. Callers enumerating states catch
/// this and branch on kind(), e.g. NoClassicalRegion means "no state here"
/// while Divergent means the numerics gave up.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace teff
