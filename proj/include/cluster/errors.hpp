#pragma once

// Error taxonomy shared across modules.  `code()` is stable and is what the
// C API and the CLI surface to machine consumers; `what()` carries context
// (labels, mutation paths) for humans.

#include <stdexcept>
#include <string>
#include <utility>

namespace qcl {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Right division h * g = f has no Laurent solution; in the engine this is a
// reportable event (a failed Laurent-phenomenon witness), never a crash.
struct NotDivisible : Error {
  explicit NotDivisible(const std::string& w) : Error("NotDivisible", w) {}
};

struct DivideByZero : Error {
  explicit DivideByZero(const std::string& w) : Error("DivideByZero", w) {}
};

// No integer skew-symmetric lambda compatible with beta exists.
struct NoRetraction : Error {
  explicit NoRetraction(const std::string& w) : Error("NoRetraction", w) {}
};

// Malformed or inconsistent input data (JSON files, label references, ...).
struct BadInput : Error {
  explicit BadInput(const std::string& w) : Error("BadInput", w) {}
};

// Explicitly out-of-scope branch reached (e.g. consistently negative maps).
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error("Unsupported", w) {}
};

// Internal invariant broke; indicates a bug rather than bad input.
struct Internal : Error {
  explicit Internal(const std::string& w) : Error("Internal", w) {}
};

}  // namespace qcl
