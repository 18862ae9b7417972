#include "scilla/runtime.hpp"

#include <sstream>

#include "scilla/eval.hpp"

namespace scilla {

const Value* Store::find(std::string_view name) const {
  for (const auto& [k, v] : entries_)
    if (k == name) return &v;
  return nullptr;
}

const Value& Store::at(std::string_view name) const {
  if (const Value* v = find(name)) return *v;
  throw EvalError(EvalErrorKind::UnknownField, "no entry '" + std::string(name) + "'");
}

void Store::set(std::string_view name, Value v) {
  for (auto& [k, old] : entries_) {
    if (k == name) {
      old = std::move(v);
      return;
    }
  }
  throw EvalError(EvalErrorKind::UnknownField, "no entry '" + std::string(name) + "'");
}

namespace {

bool type_matches(const Value& v, TypeTag t) { return v.type() == to_value_type(t); }

}  // namespace

ContractInstance instantiate(std::shared_ptr<const ContractDef> def, Address id, Uint init_bal,
                             const Store& params) {
  std::vector<Store::Entry> bound;
  for (const auto& p : def->params) {
    const Value* v = params.find(p.name);
    if (v == nullptr)
      throw InstantiationError(InstantiationErrorKind::MissingParam,
                               "missing parameter '" + p.name + "'");
    if (!type_matches(*v, p.type))
      throw InstantiationError(InstantiationErrorKind::ParamTypeMismatch,
                               "parameter '" + p.name + "' expects " + type_tag_name(p.type) +
                                   ", got " + type_name(v->type()));
    bound.emplace_back(p.name, *v);
  }
  for (const auto& [name, v] : params.entries()) {
    bool declared = false;
    for (const auto& p : def->params) declared = declared || p.name == name;
    if (!declared)
      throw InstantiationError(InstantiationErrorKind::UnknownParam,
                               "unknown parameter '" + name + "'");
  }

  Env env;
  for (const auto& [k, v] : bound) env.bind(k, v);
  std::vector<Store::Entry> fields;
  for (const auto& f : def->fields) {
    Value v;
    try {
      v = eval_expr(env, f.init);
    } catch (const EvalError& e) {
      throw InstantiationError(InstantiationErrorKind::BadInitializer,
                               "field '" + f.name + "': " + e.what());
    }
    if (!type_matches(v, f.type))
      throw InstantiationError(InstantiationErrorKind::BadInitializer,
                               "field '" + f.name + "' initializer has type " +
                                   type_name(v.type()));
    fields.emplace_back(f.name, std::move(v));
  }

  ContractInstance inst{std::move(def), Store(std::move(bound)), {}};
  inst.state0 = CState{std::move(id), std::move(init_bal), Store(std::move(fields))};
  return inst;
}

namespace {

class Interpreter {
 public:
  Interpreter(const ContractInstance& inst, const Uint& bal, const Store& fields,
              const BState& bc, Address reply_to)
      : inst_(inst), bal_(bal), fields_(fields), bc_(bc), reply_to_(std::move(reply_to)) {}

  void bind_contract_scope(Env& env) const {
    for (const auto& [k, v] : inst_.params.entries()) env.bind(k, v);
  }

  void bind_state(Env& env) const {
    for (const auto& [k, v] : fields_.entries()) env.bind(k, v);
    env.bind(kBalanceField, Value(bal_));
  }

  TransitionOutcome run(const Cmd& body, Env& env) {
    TransitionOutcome out;
    const Cmd* c = &body;
    for (;;) {
      if (const auto* n = std::get_if<Cmd::FieldRead>(&c->node)) {
        env.bind(n->var, read_field(n->field));
        c = &*n->next;
      } else if (const auto* n = std::get_if<Cmd::FieldWrite>(&c->node)) {
        if (n->field == kBalanceField || fields_.find(n->field) == nullptr)
          throw EvalError(EvalErrorKind::UnknownField, "cannot write '" + n->field + "'");
        Value v = eval_expr(env, n->value);
        fields_.set(n->field, v);
        env.bind(n->field, std::move(v));
        c = &*n->next;
      } else if (const auto* n = std::get_if<Cmd::ChainRead>(&c->node)) {
        if (n->aspect != kBlockNumberAspect)
          throw EvalError(EvalErrorKind::UnknownAspect, "unknown aspect '" + n->aspect + "'");
        env.bind(n->var, Value(bc_.block_num));
        c = &*n->next;
      } else if (const auto* n = std::get_if<Cmd::LetIn>(&c->node)) {
        env.bind(n->var, eval_expr(env, n->value));
        c = &*n->next;
      } else if (const auto* n = std::get_if<Cmd::If>(&c->node)) {
        c = eval_expr(env, n->cond).as_bool() ? &*n->then_branch : &*n->else_branch;
      } else if (const auto* n = std::get_if<Cmd::Send>(&c->node)) {
        out.out = build_message(*n, env);
        if (n->continuation != kEmptyContinuation) out.continuation = n->continuation;
        break;
      } else if (const auto* n = std::get_if<Cmd::Return>(&c->node)) {
        Value v = eval_expr(env, n->value);
        Payload body;
        if (v.is_uint()) {
          body = AmountPayload{v.as_uint()};
        } else if (v.is_string()) {
          body = TextPayload{v.as_string()};
        } else {
          throw EvalError(EvalErrorKind::TypeMismatch, "return value must be uint or string");
        }
        out.out = Message{Uint(0), inst_.state0.my_id, reply_to_, Tag(kReturnTag), std::move(body)};
        out.returned = true;
        break;
      } else {
        // A body that runs out without send/return produces no message.
        break;
      }
    }
    out.fields = std::move(fields_);
    return out;
  }

 private:
  Value read_field(const std::string& name) const {
    if (name == kBalanceField) return Value(bal_);
    return fields_.at(name);
  }

  Message build_message(const Cmd::Send& s, const Env& env) const {
    Message m{Uint(0), inst_.state0.my_id, Address{}, Tag{}, TextPayload{""}};
    bool have_to = false;
    bool have_tag = false;
    for (const auto& e : s.entries) {
      if (e.key == "to") {
        m.to = eval_expr(env, e.value).as_address();
        have_to = true;
      } else if (e.key == "amount") {
        m.val = eval_expr(env, e.value).as_uint();
      } else if (e.key == "tag") {
        const std::string t = eval_expr(env, e.value).as_string();
        if (t.empty()) throw EvalError(EvalErrorKind::MalformedMessage, "empty message tag");
        m.method = Tag(t);
        have_tag = true;
      } else if (e.key == "msg") {
        m.body = eval_payload(env, e.value);
      } else {
        throw EvalError(EvalErrorKind::MalformedMessage, "unknown message entry '" + e.key + "'");
      }
    }
    if (!have_to || !have_tag)
      throw EvalError(EvalErrorKind::MalformedMessage, "message lacks 'to' or 'tag'");
    return m;
  }

  const ContractInstance& inst_;
  const Uint& bal_;
  Store fields_;
  const BState& bc_;
  Address reply_to_;
};

TransitionOutcome exception_outcome(const Store& fields, std::optional<EvalErrorKind> err) {
  TransitionOutcome out;
  out.fields = fields;
  out.error = err;
  return out;
}

Value message_component(const std::string& name, const Message& m) {
  if (name == "sender") return Value(m.sender);
  if (name == "to") return Value(m.to);
  if (name == "value") return Value(m.val);
  if (name == "tag") return Value(m.method.text());
  throw EvalError(EvalErrorKind::UnboundVariable, "'" + name + "' is not a message component");
}

}  // namespace

TransitionOutcome apply_transition(const ContractInstance& inst, const Uint& bal,
                                   const Store& fields, const Message& m, const BState& bc) {
  const TransitionDef* t = inst.def->find_transition(m.method.text());
  if (t == nullptr) return exception_outcome(fields, std::nullopt);
  try {
    Interpreter interp(inst, bal, fields, bc, m.sender);
    Env env;
    interp.bind_contract_scope(env);
    for (const auto& p : t->params) env.bind(p.name, message_component(p.name, m));
    if (t->filter && !eval_expr(env, *t->filter).as_bool())
      return exception_outcome(fields, std::nullopt);
    interp.bind_state(env);
    return interp.run(t->body, env);
  } catch (const EvalError& e) {
    return exception_outcome(fields, e.kind());
  }
}

TransitionOutcome invoke_continuation(const ContractInstance& inst, const std::string& name,
                                      const Uint& bal, const Store& fields, const Message& m,
                                      const BState& bc) {
  const ContinuationDef* k = inst.def->find_continuation(name);
  if (k == nullptr) return exception_outcome(fields, EvalErrorKind::UnboundVariable);
  try {
    Value arg;
    if (const auto* a = std::get_if<AmountPayload>(&m.body)) {
      arg = Value(a->amount);
    } else if (const auto* s = std::get_if<TextPayload>(&m.body)) {
      arg = Value(s->text);
    } else {
      throw EvalError(EvalErrorKind::TypeMismatch, "continuation argument is not a value");
    }
    if (!type_matches(arg, k->param.type))
      throw EvalError(EvalErrorKind::TypeMismatch, "continuation '" + name + "' expects " +
                                                       type_tag_name(k->param.type));
    Interpreter interp(inst, bal, fields, bc, m.sender);
    Env env;
    interp.bind_contract_scope(env);
    env.bind(k->param.name, std::move(arg));
    interp.bind_state(env);
    return interp.run(k->body, env);
  } catch (const EvalError& e) {
    return exception_outcome(fields, e.kind());
  }
}

Step make_step(const CState& pre, const Message& m, TransitionOutcome outcome) {
  Step s{pre, pre, std::move(outcome.out)};
  if (s.out) {
    s.post.balance = uint_monus(pre.balance + m.val, s.out->val);
    s.post.fields = std::move(outcome.fields);
  }
  return s;
}

Step step_prot(const ContractInstance& inst, const CState& pre, const BState& bc,
               const Message& m) {
  return make_step(pre, m, apply_transition(inst, pre.balance, pre.fields, m, bc));
}

Trace execute(const ContractInstance& inst, const CState& pre, const Schedule& sc) {
  Trace tr;
  tr.reserve(sc.size());
  const CState* cur = &pre;
  for (const auto& el : sc) {
    tr.push_back(step_prot(inst, *cur, el.bstate, el.msg));
    cur = &tr.back().post;
  }
  return tr;
}

Trace execute0(const ContractInstance& inst, const Schedule& sc) {
  if (sc.empty()) return Trace{Step{inst.state0, inst.state0, std::nullopt}};
  return execute(inst, inst.state0, sc);
}

std::optional<Diagnostic> overdraw_lint(const Step& step, const Message& m) {
  if (!step.out) return std::nullopt;
  const Uint available = step.pre.balance + m.val;
  if (step.out->val <= available) return std::nullopt;
  std::ostringstream msg;
  msg << "outgoing amount " << step.out->val << " exceeds balance " << step.pre.balance
      << " + incoming " << m.val << "; balance truncated to 0";
  return Diagnostic{Severity::Warning, SourceSpan{}, kLintOverdraw, msg.str()};
}

std::optional<Diagnostic> absorbed_funds_note(const Step& step, const Message& m) {
  if (!step.out || m.val == 0 || step.post.fields != step.pre.fields) return std::nullopt;
  std::ostringstream msg;
  msg << "incoming " << m.val << " kept by the contract while its fields are unchanged";
  return Diagnostic{Severity::Note, SourceSpan{}, kLintAbsorbedFunds, msg.str()};
}

}  // namespace scilla
