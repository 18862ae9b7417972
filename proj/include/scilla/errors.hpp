#ifndef SCILLA_ERRORS_HPP
#define SCILLA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scilla {

enum class EvalErrorKind {
  UnboundVariable,
  TypeMismatch,
  MapKeyAbsent,
  UnknownField,
  UnknownAspect,
  MalformedMessage,
};

const char* eval_error_name(EvalErrorKind kind);

/// Raised while evaluating expressions or executing command bodies. The
/// runtime turns every EvalError inside a transition into the exception
/// outcome (no output, state unchanged).
class EvalError : public std::runtime_error {
 public:
  EvalError(EvalErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  EvalErrorKind kind() const { return kind_; }

 private:
  EvalErrorKind kind_;
};

}  // namespace scilla

#endif  // SCILLA_ERRORS_HPP
