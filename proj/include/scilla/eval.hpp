#ifndef SCILLA_EVAL_HPP
#define SCILLA_EVAL_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scilla/ast.hpp"
#include "scilla/errors.hpp"
#include "scilla/value.hpp"

namespace scilla {

/// Name -> Value bindings. Later bindings shadow earlier ones.
class Env {
 public:
  Env() = default;

  void bind(std::string name, Value value);
  const Value* lookup(std::string_view name) const;

  std::size_t size() const { return bindings_.size(); }

 private:
  std::vector<std::pair<std::string, Value>> bindings_;
};

/// Evaluates a pure expression. Throws EvalError (UnboundVariable,
/// TypeMismatch, MapKeyAbsent).
Value eval_expr(const Env& env, const Expr& e);

/// Evaluates an expression that must produce a message payload: string
/// values become Text, uints become Amount, `ok_msg`/`no_msg` map to their
/// constants.
Payload eval_payload(const Env& env, const Expr& e);

}  // namespace scilla

#endif  // SCILLA_EVAL_HPP
