#include "scilla/eval.hpp"

namespace scilla {

void Env::bind(std::string name, Value value) {
  bindings_.emplace_back(std::move(name), std::move(value));
}

const Value* Env::lookup(std::string_view name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

namespace {

// let-bound names inside an expression live on the C++ stack.
struct Scope {
  const Scope* parent;
  std::string_view name;
  const Value* value;
};

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  Value eval(const Expr& e, const Scope* scope) {
    return std::visit([&](const auto& n) { return eval_node(n, scope); }, e.node);
  }

 private:
  Value eval_node(const Expr::Literal& n, const Scope*) { return n.value; }

  Value eval_node(const Expr::PayloadLit&, const Scope*) {
    throw EvalError(EvalErrorKind::TypeMismatch, "payload constant used as a value");
  }

  Value eval_node(const Expr::Var& n, const Scope* scope) {
    for (const Scope* s = scope; s != nullptr; s = s->parent)
      if (s->name == n.name) return *s->value;
    if (const Value* v = env_.lookup(n.name)) return *v;
    throw EvalError(EvalErrorKind::UnboundVariable, "unbound variable '" + n.name + "'");
  }

  Value eval_node(const Expr::Not& n, const Scope* scope) {
    return Value(!eval(*n.operand, scope).as_bool());
  }

  Value eval_node(const Expr::Binary& n, const Scope* scope) {
    // && and || short-circuit.
    if (n.op == BinOp::And) {
      if (!eval(*n.lhs, scope).as_bool()) return Value(false);
      return Value(eval(*n.rhs, scope).as_bool());
    }
    if (n.op == BinOp::Or) {
      if (eval(*n.lhs, scope).as_bool()) return Value(true);
      return Value(eval(*n.rhs, scope).as_bool());
    }
    Value lhs = eval(*n.lhs, scope);
    Value rhs = eval(*n.rhs, scope);
    switch (n.op) {
      case BinOp::Add: return Value(Uint(lhs.as_uint() + rhs.as_uint()));
      case BinOp::Sub: return Value(uint_monus(lhs.as_uint(), rhs.as_uint()));
      case BinOp::Le: return Value(lhs.as_uint() <= rhs.as_uint());
      case BinOp::Lt: return Value(lhs.as_uint() < rhs.as_uint());
      case BinOp::Eq:
        if (lhs.type() != rhs.type())
          throw EvalError(EvalErrorKind::TypeMismatch,
                          std::string("cannot compare ") + type_name(lhs.type()) + " with " +
                              type_name(rhs.type()));
        return Value(lhs == rhs);
      default: break;
    }
    throw EvalError(EvalErrorKind::TypeMismatch, "bad binary operator");
  }

  Value eval_node(const Expr::Call& n, const Scope* scope) {
    auto arity = [&](std::size_t k) {
      if (n.args.size() != k)
        throw EvalError(EvalErrorKind::TypeMismatch,
                        std::string(builtin_name(n.fn)) + " expects " + std::to_string(k) +
                            " arguments");
    };
    switch (n.fn) {
      case Builtin::Put: {
        arity(3);
        Value m = eval(n.args[0], scope);
        Value k = eval(n.args[1], scope);
        Value v = eval(n.args[2], scope);
        return Value(m.as_map().put(k.as_address(), v.as_uint()));
      }
      case Builtin::Get: {
        arity(2);
        Value m = eval(n.args[0], scope);
        Value k = eval(n.args[1], scope);
        const Uint* found = m.as_map().find(k.as_address());
        if (found == nullptr)
          throw EvalError(EvalErrorKind::MapKeyAbsent,
                          "key '" + k.as_address().id + "' not in map");
        return Value(*found);
      }
      case Builtin::Remove: {
        arity(2);
        Value m = eval(n.args[0], scope);
        Value k = eval(n.args[1], scope);
        return Value(m.as_map().remove(k.as_address()));
      }
      case Builtin::Contains: {
        arity(2);
        Value m = eval(n.args[0], scope);
        Value k = eval(n.args[1], scope);
        return Value(m.as_map().contains(k.as_address()));
      }
    }
    throw EvalError(EvalErrorKind::TypeMismatch, "bad builtin");
  }

  Value eval_node(const Expr::Let& n, const Scope* scope) {
    Value bound = eval(*n.bound, scope);
    Scope inner{scope, n.name, &bound};
    return eval(*n.body, &inner);
  }

  const Env& env_;
};

}  // namespace

Value eval_expr(const Env& env, const Expr& e) { return Evaluator(env).eval(e, nullptr); }

Payload eval_payload(const Env& env, const Expr& e) {
  if (const auto* p = std::get_if<Expr::PayloadLit>(&e.node)) return p->payload;
  Value v = eval_expr(env, e);
  if (v.is_string()) return TextPayload{v.as_string()};
  if (v.is_uint()) return AmountPayload{v.as_uint()};
  throw EvalError(EvalErrorKind::TypeMismatch,
                  std::string("message body must be string or uint, got ") + type_name(v.type()));
}

}  // namespace scilla
