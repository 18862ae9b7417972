#include "scilla/checks.hpp"

#include <optional>
#include <sstream>

namespace scilla {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
  }
  return "?";
}

bool CheckReport::has_errors() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return true;
  return false;
}

void CheckReport::append(const CheckReport& other) {
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
}

std::size_t CheckReport::count(std::string_view rule_id) const {
  std::size_t n = 0;
  for (const auto& d : diagnostics)
    if (d.rule_id == rule_id) ++n;
  return n;
}

std::string render(const Diagnostic& d, std::string_view file) {
  std::ostringstream os;
  os << file << ':' << d.span.line << ':' << d.span.column << ": " << severity_name(d.severity)
     << '[' << d.rule_id << "]: " << d.message;
  return os.str();
}

void render(std::ostream& os, const CheckReport& r, std::string_view file) {
  for (const auto& d : r.diagnostics) os << render(d, file) << '\n';
}

namespace {

Diagnostic error(SourceSpan span, const char* rule, std::string message) {
  return Diagnostic{Severity::Error, span, rule, std::move(message)};
}

std::string where(const SourceSpan& s) {
  return std::to_string(s.line) + ":" + std::to_string(s.column);
}

}  // namespace

// ---------------------------------------------------------------------------
// Unique tags

CheckReport check_unique_tags(const ContractDef& c) {
  struct Named {
    const std::string* name;
    SourceSpan span;
  };
  std::vector<Named> seen;
  CheckReport report;
  auto visit = [&](const std::string& name, const SourceSpan& span) {
    for (const auto& prior : seen) {
      if (tags_match(*prior.name, name)) {
        report.diagnostics.push_back(
            error(span, kRuleUniqueTags,
                  "tag '" + name + "' duplicates '" + *prior.name + "' declared at " +
                      where(prior.span)));
        return;
      }
    }
    seen.push_back(Named{&name, span});
  };
  for (const auto& t : c.transitions) visit(t.tag, t.span);
  for (const auto& k : c.continuations) visit(k.name, k.span);
  return report;
}

// ---------------------------------------------------------------------------
// Filter purity

namespace {

void scan_filter(const ContractDef& c, const Expr& e, std::vector<std::string_view>& locals,
                 const std::string& transition, CheckReport& report) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Expr::Var>) {
          for (auto l : locals)
            if (l == n.name) return;
          if (n.name == kBalanceField || c.find_field(n.name) != nullptr)
            report.diagnostics.push_back(
                error(e.span, kRuleFilterEffect,
                      "filter of transition '" + transition + "' reads contract field '" +
                          n.name + "'"));
        } else if constexpr (std::is_same_v<N, Expr::Not>) {
          scan_filter(c, *n.operand, locals, transition, report);
        } else if constexpr (std::is_same_v<N, Expr::Binary>) {
          scan_filter(c, *n.lhs, locals, transition, report);
          scan_filter(c, *n.rhs, locals, transition, report);
        } else if constexpr (std::is_same_v<N, Expr::Call>) {
          for (const auto& a : n.args) scan_filter(c, a, locals, transition, report);
        } else if constexpr (std::is_same_v<N, Expr::Let>) {
          scan_filter(c, *n.bound, locals, transition, report);
          locals.push_back(n.name);
          scan_filter(c, *n.body, locals, transition, report);
          locals.pop_back();
        }
      },
      e.node);
}

}  // namespace

CheckReport check_filter_purity(const ContractDef& c) {
  CheckReport report;
  for (const auto& t : c.transitions) {
    if (!t.filter) continue;
    std::vector<std::string_view> locals;
    scan_filter(c, *t.filter, locals, t.tag, report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Tail position

namespace {

void scan_paths(const Cmd& cmd, const SourceSpan& last, const std::string& owner,
                CheckReport& report) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Cmd::End>) {
          report.diagnostics.push_back(error(
              last, kRuleTailPosition, "a path through '" + owner + "' ends without send or return"));
        } else if constexpr (std::is_same_v<N, Cmd::If>) {
          scan_paths(*n.then_branch, cmd.span, owner, report);
          scan_paths(*n.else_branch, cmd.span, owner, report);
        } else if constexpr (std::is_same_v<N, Cmd::Send> || std::is_same_v<N, Cmd::Return>) {
          // tail command
        } else {
          scan_paths(*n.next, cmd.span, owner, report);
        }
      },
      cmd.node);
}

}  // namespace

CheckReport check_tail_position(const ContractDef& c) {
  CheckReport report;
  for (const auto& t : c.transitions) scan_paths(t.body, t.span, t.tag, report);
  for (const auto& k : c.continuations) scan_paths(k.body, k.span, k.name, report);
  return report;
}

// ---------------------------------------------------------------------------
// Types

namespace {

class TypeChecker {
 public:
  TypeChecker(const ContractDef& c, CheckReport& report) : c_(c), report_(report) {}

  void run() {
    for (std::size_t i = 0; i < c_.params.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (c_.params[i].name == c_.params[j].name)
          report_.diagnostics.push_back(error(c_.params[i].span, kRuleShadowing,
                                              "duplicate parameter '" + c_.params[i].name + "'"));

    for (const auto& f : c_.fields) {
      if (is_param(f.name))
        report_.diagnostics.push_back(error(
            f.span, kRuleShadowing, "field '" + f.name + "' shadows a contract parameter"));
      if (f.name == kBalanceField)
        report_.diagnostics.push_back(
            error(f.span, kRuleShadowing, "'balance' is an implicit field"));
      // Initializers see contract parameters only.
      Scope scope;
      for (const auto& p : c_.params) scope.push_back({p.name, to_value_type(p.type)});
      initializer_mode_ = true;
      auto t = type_of(f.init, scope);
      initializer_mode_ = false;
      expect(t, to_value_type(f.type), f.init.span, "initializer of field '" + f.name + "'");
    }

    for (const auto& t : c_.transitions) transition(t);
    for (const auto& k : c_.continuations) continuation(k);
  }

 private:
  // Bindings whose type could not be determined map to nullopt so uses do
  // not cascade into further diagnostics.
  using Scope = std::vector<std::pair<std::string, std::optional<Type>>>;

  bool is_param(const std::string& name) const {
    for (const auto& p : c_.params)
      if (p.name == name) return true;
    return false;
  }

  bool is_field(const std::string& name) const {
    return name == kBalanceField || c_.find_field(name) != nullptr;
  }

  std::optional<Type> field_type(const std::string& name) const {
    if (name == kBalanceField) return Type::Uint;
    if (const FieldDecl* f = c_.find_field(name)) return to_value_type(f->type);
    return std::nullopt;
  }

  void expect(std::optional<Type> got, Type want, const SourceSpan& span,
              const std::string& what) {
    if (got && *got != want)
      report_.diagnostics.push_back(error(span, kRuleTypeMismatch,
                                          what + ": expected " + type_name(want) + ", got " +
                                              type_name(*got)));
  }

  Scope base_scope() const {
    Scope s;
    for (const auto& p : c_.params) s.push_back({p.name, to_value_type(p.type)});
    for (const auto& f : c_.fields) s.push_back({f.name, to_value_type(f.type)});
    s.push_back({kBalanceField, Type::Uint});
    return s;
  }

  void bind_local(Scope& scope, const std::string& name, std::optional<Type> t,
                  const SourceSpan& span) {
    if (is_field(name))
      report_.diagnostics.push_back(
          error(span, kRuleShadowing, "local '" + name + "' shadows contract field"));
    scope.push_back({name, t});
  }

  void transition(const TransitionDef& t) {
    Scope scope = base_scope();
    for (const auto& p : t.params) {
      auto want = message_component_type(p.name);
      if (!want) {
        report_.diagnostics.push_back(
            error(p.span, kRuleMessageComponent,
                  "'" + p.name + "' is not a message component (sender, value, tag, to)"));
      } else if (*want != p.type) {
        report_.diagnostics.push_back(
            error(p.span, kRuleMessageComponent,
                  "message component '" + p.name + "' has type " + type_tag_name(*want)));
      }
      if (is_param(p.name) || is_field(p.name))
        report_.diagnostics.push_back(error(
            p.span, kRuleShadowing, "transition parameter '" + p.name + "' shadows contract state"));
      scope.push_back({p.name, to_value_type(p.type)});
    }
    if (t.filter) {
      auto ft = type_of(*t.filter, scope);
      expect(ft, Type::Bool, t.filter->span, "filter of '" + t.tag + "'");
    }
    command(t.body, scope);
  }

  void continuation(const ContinuationDef& k) {
    Scope scope = base_scope();
    if (k.param.type != TypeTag::Uint && k.param.type != TypeTag::String)
      report_.diagnostics.push_back(error(k.param.span, kRuleTypeMismatch,
                                          "continuation parameter must be uint or string"));
    if (is_param(k.param.name) || is_field(k.param.name))
      report_.diagnostics.push_back(
          error(k.param.span, kRuleShadowing,
                "continuation parameter '" + k.param.name + "' shadows contract state"));
    scope.push_back({k.param.name, to_value_type(k.param.type)});
    command(k.body, scope);
  }

  void command(const Cmd& cmd, Scope scope) {
    std::visit([&](const auto& n) { command_node(n, cmd.span, scope); }, cmd.node);
  }

  void command_node(const Cmd::FieldRead& n, const SourceSpan& span, Scope& scope) {
    auto t = field_type(n.field);
    if (!t)
      report_.diagnostics.push_back(
          error(span, kRuleUnknownField, "unknown field '" + n.field + "'"));
    bind_local(scope, n.var, t, span);
    command(*n.next, scope);
  }

  void command_node(const Cmd::ChainRead& n, const SourceSpan& span, Scope& scope) {
    std::optional<Type> t;
    if (n.aspect == kBlockNumberAspect) {
      t = Type::Uint;
    } else {
      report_.diagnostics.push_back(
          error(span, kRuleUnknownAspect, "unknown blockchain aspect '" + n.aspect + "'"));
    }
    bind_local(scope, n.var, t, span);
    command(*n.next, scope);
  }

  void command_node(const Cmd::FieldWrite& n, const SourceSpan& span, Scope& scope) {
    auto value = type_of(n.value, scope);
    if (n.field == kBalanceField) {
      report_.diagnostics.push_back(
          error(span, kRuleReadonlyField, "'balance' changes only by transferring funds"));
    } else if (auto t = field_type(n.field)) {
      expect(value, *t, n.value.span, "write to field '" + n.field + "'");
    } else {
      report_.diagnostics.push_back(
          error(span, kRuleUnknownField, "unknown field '" + n.field + "'"));
    }
    command(*n.next, scope);
  }

  void command_node(const Cmd::LetIn& n, const SourceSpan& span, Scope& scope) {
    bind_local(scope, n.var, type_of(n.value, scope), span);
    command(*n.next, scope);
  }

  void command_node(const Cmd::If& n, const SourceSpan&, Scope& scope) {
    expect(type_of(n.cond, scope), Type::Bool, n.cond.span, "condition");
    command(*n.then_branch, scope);
    command(*n.else_branch, scope);
  }

  void command_node(const Cmd::Send& n, const SourceSpan& span, Scope& scope) {
    bool has_to = false, has_amount = false, has_tag = false;
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      const MessageEntry& e = n.entries[i];
      for (std::size_t j = 0; j < i; ++j)
        if (n.entries[j].key == e.key)
          report_.diagnostics.push_back(
              error(e.span, kRuleMessageShape, "duplicate message entry '" + e.key + "'"));
      auto t = type_of(e.value, scope, /*payload_ok=*/e.key == "msg");
      if (e.key == "to") {
        has_to = true;
        expect(t, Type::Address, e.value.span, "message entry 'to'");
      } else if (e.key == "amount") {
        has_amount = true;
        expect(t, Type::Uint, e.value.span, "message entry 'amount'");
      } else if (e.key == "tag") {
        has_tag = true;
        expect(t, Type::String, e.value.span, "message entry 'tag'");
      } else if (e.key == "msg") {
        if (t && *t != Type::String && *t != Type::Uint && *t != Type::Payload)
          report_.diagnostics.push_back(
              error(e.value.span, kRuleTypeMismatch,
                    std::string("message body must be string, uint or a payload constant, got ") +
                        type_name(*t)));
      } else {
        report_.diagnostics.push_back(
            error(e.span, kRuleMessageShape, "unknown message entry '" + e.key + "'"));
      }
    }
    if (!has_to || !has_amount || !has_tag)
      report_.diagnostics.push_back(
          error(span, kRuleMessageShape, "message needs 'to', 'amount' and 'tag' entries"));
    if (n.continuation != kEmptyContinuation && c_.find_continuation(n.continuation) == nullptr)
      report_.diagnostics.push_back(error(span, kRuleUnknownContinuation,
                                          "unknown continuation '" + n.continuation + "'"));
  }

  void command_node(const Cmd::Return& n, const SourceSpan&, Scope& scope) {
    auto t = type_of(n.value, scope);
    if (t && *t != Type::Uint && *t != Type::String)
      report_.diagnostics.push_back(error(n.value.span, kRuleTypeMismatch,
                                          std::string("returned value must be uint or string, got ") +
                                              type_name(*t)));
  }

  void command_node(const Cmd::End&, const SourceSpan&, Scope&) {}

  const std::optional<Type>* lookup(const Scope& scope, const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  std::optional<Type> type_of(const Expr& e, const Scope& scope, bool payload_ok = false) {
    return std::visit(
        [&](const auto& n) -> std::optional<Type> {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Expr::Literal>) {
            return n.value.type();
          } else if constexpr (std::is_same_v<N, Expr::PayloadLit>) {
            if (!payload_ok) {
              report_.diagnostics.push_back(error(
                  e.span, kRuleTypeMismatch, "payload constants only appear as message bodies"));
              return std::nullopt;
            }
            return Type::Payload;
          } else if constexpr (std::is_same_v<N, Expr::Var>) {
            const std::optional<Type>* t = lookup(scope, n.name);
            if (t == nullptr) {
              if (initializer_mode_ && is_field(n.name)) {
                report_.diagnostics.push_back(error(
                    e.span, kRuleFieldInit,
                    "field initializers may only use constants and contract parameters"));
              } else {
                report_.diagnostics.push_back(
                    error(e.span, kRuleUnbound, "unbound variable '" + n.name + "'"));
              }
              return std::nullopt;
            }
            return *t;
          } else if constexpr (std::is_same_v<N, Expr::Not>) {
            expect(type_of(*n.operand, scope), Type::Bool, n.operand->span, "operand of 'not'");
            return Type::Bool;
          } else if constexpr (std::is_same_v<N, Expr::Binary>) {
            auto l = type_of(*n.lhs, scope);
            auto r = type_of(*n.rhs, scope);
            const std::string what = std::string("operand of '") + binop_symbol(n.op) + "'";
            switch (n.op) {
              case BinOp::Add:
              case BinOp::Sub:
                expect(l, Type::Uint, n.lhs->span, what);
                expect(r, Type::Uint, n.rhs->span, what);
                return Type::Uint;
              case BinOp::Le:
              case BinOp::Lt:
                expect(l, Type::Uint, n.lhs->span, what);
                expect(r, Type::Uint, n.rhs->span, what);
                return Type::Bool;
              case BinOp::And:
              case BinOp::Or:
                expect(l, Type::Bool, n.lhs->span, what);
                expect(r, Type::Bool, n.rhs->span, what);
                return Type::Bool;
              case BinOp::Eq:
                if (l && r && *l != *r)
                  report_.diagnostics.push_back(
                      error(e.span, kRuleTypeMismatch,
                            std::string("cannot compare ") + type_name(*l) + " with " +
                                type_name(*r)));
                return Type::Bool;
            }
            return std::nullopt;
          } else if constexpr (std::is_same_v<N, Expr::Call>) {
            std::vector<Type> sig;
            Type result = Type::Bool;
            switch (n.fn) {
              case Builtin::Put: sig = {Type::Map, Type::Address, Type::Uint}; result = Type::Map; break;
              case Builtin::Get: sig = {Type::Map, Type::Address}; result = Type::Uint; break;
              case Builtin::Remove: sig = {Type::Map, Type::Address}; result = Type::Map; break;
              case Builtin::Contains: sig = {Type::Map, Type::Address}; result = Type::Bool; break;
            }
            if (n.args.size() != sig.size()) {
              report_.diagnostics.push_back(
                  error(e.span, kRuleTypeMismatch,
                        std::string(builtin_name(n.fn)) + " takes " + std::to_string(sig.size()) +
                            " arguments"));
              for (const auto& a : n.args) type_of(a, scope);
              return result;
            }
            for (std::size_t i = 0; i < sig.size(); ++i)
              expect(type_of(n.args[i], scope), sig[i], n.args[i].span,
                     std::string("argument ") + std::to_string(i + 1) + " of " +
                         builtin_name(n.fn));
            return result;
          } else if constexpr (std::is_same_v<N, Expr::Let>) {
            auto bound = type_of(*n.bound, scope);
            Scope inner = scope;
            if (is_field(n.name))
              report_.diagnostics.push_back(
                  error(e.span, kRuleShadowing, "local '" + n.name + "' shadows contract field"));
            inner.push_back({n.name, bound});
            return type_of(*n.body, inner, payload_ok);
          }
        },
        e.node);
  }

  const ContractDef& c_;
  CheckReport& report_;
  bool initializer_mode_ = false;
};

}  // namespace

CheckReport typecheck(const ContractDef& c) {
  CheckReport report;
  TypeChecker(c, report).run();
  return report;
}

CheckReport check_all(const ContractDef& c) {
  CheckReport report = check_unique_tags(c);
  report.append(check_filter_purity(c));
  report.append(check_tail_position(c));
  report.append(typecheck(c));
  return report;
}

}  // namespace scilla
