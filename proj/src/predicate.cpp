#include "scilla/predicate.hpp"

#include <sstream>

#include "scilla/lexer.hpp"

namespace scilla {

const char* predicate_kind_name(PredicateKind k) {
  switch (k) {
    case PredicateKind::State: return "state";
    case PredicateKind::Pair: return "pair";
    case PredicateKind::Element: return "element";
  }
  return "?";
}

namespace {

// Lit is an untyped string literal; it compares with addresses and strings.
enum class PType { Uint, Bool, Addr, Str, Map, Lit };

const char* ptype_name(PType t) {
  switch (t) {
    case PType::Uint: return "uint";
    case PType::Bool: return "boolean";
    case PType::Addr: return "address";
    case PType::Str: return "string";
    case PType::Map: return "map";
    case PType::Lit: return "string literal";
  }
  return "?";
}

bool is_textual(PType t) { return t == PType::Addr || t == PType::Str || t == PType::Lit; }

bool comparable(PType a, PType b) {
  if (a == b) return true;
  return (a == PType::Lit && is_textual(b)) || (b == PType::Lit && is_textual(a));
}

PType ptype_of(Type t) {
  switch (t) {
    case Type::Uint: return PType::Uint;
    case Type::Bool: return PType::Bool;
    case Type::Address: return PType::Addr;
    case Type::String: return PType::Str;
    case Type::Map: return PType::Map;
    case Type::Payload: break;
  }
  throw PredicateTypeError("payload values cannot appear in predicates");
}

}  // namespace

struct Predicate::Node {
  enum class Op {
    Const, Field, Balance, MyId,
    ElemBlock, ElemSender, ElemTo, ElemTag, ElemVal,
    Not, And, Or, Implies,
    Eq, Ne, Le, Lt, Ge, Gt, Add, Sub,
    SumValues, Size, Contains, HasEntry,
  };

  Op op = Op::Const;
  PType type = PType::Bool;
  Value constant;
  std::size_t field = 0;
  // 0 = pre (or the only state), 1 = post.
  int side = 0;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using Node = Predicate::Node;
using Op = Node::Op;
using NodePtr = std::shared_ptr<const Node>;

struct Ctx {
  const CState* state[2] = {nullptr, nullptr};
  const ScheduleElement* elem = nullptr;
};

class Builder {
 public:
  Builder(std::string_view text, PredicateKind kind, const ContractInstance& inst)
      : cur_(tokenize(text)), kind_(kind), inst_(inst) {}

  NodePtr build() {
    NodePtr root = implies();
    cur_.expect(TokenKind::Eof);
    expect_type(*root, PType::Bool, "predicate");
    return root;
  }

 private:
  static NodePtr make(Op op, PType type, std::vector<NodePtr> kids = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->type = type;
    n->kids = std::move(kids);
    return n;
  }

  void expect_type(const Node& n, PType t, const std::string& where) const {
    if (n.type != t)
      throw PredicateTypeError(where + " expects " + ptype_name(t) + ", got " +
                               ptype_name(n.type));
  }

  NodePtr implies() {
    NodePtr lhs = or_expr();
    if (cur_.accept(TokenKind::Arrow)) {
      NodePtr rhs = implies();
      expect_type(*lhs, PType::Bool, "'->'");
      expect_type(*rhs, PType::Bool, "'->'");
      return make(Op::Implies, PType::Bool, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr or_expr() {
    NodePtr lhs = and_expr();
    while (cur_.accept(TokenKind::PipePipe)) {
      NodePtr rhs = and_expr();
      expect_type(*lhs, PType::Bool, "'||'");
      expect_type(*rhs, PType::Bool, "'||'");
      lhs = make(Op::Or, PType::Bool, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr and_expr() {
    NodePtr lhs = unary();
    while (cur_.accept(TokenKind::AmpAmp)) {
      NodePtr rhs = unary();
      expect_type(*lhs, PType::Bool, "'&&'");
      expect_type(*rhs, PType::Bool, "'&&'");
      lhs = make(Op::And, PType::Bool, {lhs, rhs});
    }
    return lhs;
  }

  NodePtr unary() {
    if (cur_.accept(TokenKind::Bang) || cur_.accept(TokenKind::KwNot)) {
      NodePtr operand = unary();
      expect_type(*operand, PType::Bool, "negation");
      return make(Op::Not, PType::Bool, {operand});
    }
    return comparison();
  }

  NodePtr comparison() {
    NodePtr lhs = additive();
    Op op;
    switch (cur_.peek().kind) {
      case TokenKind::EqEq: op = Op::Eq; break;
      case TokenKind::BangEq: op = Op::Ne; break;
      case TokenKind::Le: op = Op::Le; break;
      case TokenKind::Lt: op = Op::Lt; break;
      case TokenKind::Ge: op = Op::Ge; break;
      case TokenKind::Gt: op = Op::Gt; break;
      default: return lhs;
    }
    const std::string sym = cur_.advance().text;
    NodePtr rhs = additive();
    if (op == Op::Eq || op == Op::Ne) {
      if (!comparable(lhs->type, rhs->type))
        throw PredicateTypeError("cannot compare " + std::string(ptype_name(lhs->type)) +
                                 " with " + ptype_name(rhs->type));
    } else {
      expect_type(*lhs, PType::Uint, "'" + sym + "'");
      expect_type(*rhs, PType::Uint, "'" + sym + "'");
    }
    return make(op, PType::Bool, {lhs, rhs});
  }

  NodePtr additive() {
    NodePtr lhs = atom();
    for (;;) {
      Op op;
      if (cur_.accept(TokenKind::Plus)) {
        op = Op::Add;
      } else if (cur_.accept(TokenKind::Minus)) {
        op = Op::Sub;
      } else {
        return lhs;
      }
      NodePtr rhs = atom();
      expect_type(*lhs, PType::Uint, "arithmetic");
      expect_type(*rhs, PType::Uint, "arithmetic");
      lhs = make(op, PType::Uint, {lhs, rhs});
    }
  }

  NodePtr constant(Value v, PType t) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->type = t;
    n->constant = std::move(v);
    return n;
  }

  NodePtr atom() {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case TokenKind::Int: return constant(Value(Uint(cur_.advance().text)), PType::Uint);
      case TokenKind::String: return constant(Value(cur_.advance().text), PType::Lit);
      case TokenKind::KwTrue: cur_.advance(); return constant(Value(true), PType::Bool);
      case TokenKind::KwFalse: cur_.advance(); return constant(Value(false), PType::Bool);
      case TokenKind::LParen: {
        cur_.advance();
        NodePtr inner = implies();
        cur_.expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::Ident: {
        std::string name = cur_.advance().text;
        if (cur_.at(TokenKind::LParen)) return call(name);
        if (cur_.accept(TokenKind::Dot)) {
          std::string member = cur_.expect(TokenKind::Ident, "(state member)").text;
          return qualified(name, member);
        }
        return bare(name);
      }
      default: cur_.fail("a predicate term");
    }
  }

  NodePtr call(const std::string& fn) {
    cur_.expect(TokenKind::LParen);
    std::vector<NodePtr> args;
    if (!cur_.at(TokenKind::RParen)) {
      do {
        args.push_back(additive());
      } while (cur_.accept(TokenKind::Comma));
    }
    cur_.expect(TokenKind::RParen);

    auto arity = [&](std::size_t k) {
      if (args.size() != k)
        throw PredicateTypeError(fn + " expects " + std::to_string(k) + " arguments");
    };
    auto key = [&](const Node& n) {
      if (n.type != PType::Addr && n.type != PType::Lit)
        throw PredicateTypeError(fn + " expects an address key, got " + ptype_name(n.type));
    };
    if (fn == "sum_values" || fn == "size") {
      arity(1);
      expect_type(*args[0], PType::Map, fn);
      return make(fn == "size" ? Op::Size : Op::SumValues, PType::Uint, std::move(args));
    }
    if (fn == "contains") {
      arity(2);
      expect_type(*args[0], PType::Map, fn);
      key(*args[1]);
      return make(Op::Contains, PType::Bool, std::move(args));
    }
    if (fn == "has_entry") {
      arity(3);
      expect_type(*args[0], PType::Map, fn);
      key(*args[1]);
      expect_type(*args[2], PType::Uint, fn);
      return make(Op::HasEntry, PType::Bool, std::move(args));
    }
    throw PredicateTypeError("unknown function '" + fn + "'");
  }

  NodePtr state_member(const std::string& name, int side) {
    auto n = std::make_shared<Node>();
    n->side = side;
    if (name == kBalanceField) {
      n->op = Op::Balance;
      n->type = PType::Uint;
      return n;
    }
    if (name == "my_id") {
      n->op = Op::MyId;
      n->type = PType::Addr;
      return n;
    }
    const auto& entries = inst_.state0.fields.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].first == name) {
        n->op = Op::Field;
        n->type = ptype_of(entries[i].second.type());
        n->field = i;
        return n;
      }
    }
    return nullptr;
  }

  NodePtr qualified(const std::string& qual, const std::string& member) {
    if (kind_ != PredicateKind::Pair)
      throw PredicateTypeError("'" + qual + "." + member + "' is only valid in pair predicates");
    int side;
    if (qual == "pre") {
      side = 0;
    } else if (qual == "post") {
      side = 1;
    } else {
      throw PredicateTypeError("unknown qualifier '" + qual + "' (use pre. or post.)");
    }
    if (NodePtr n = state_member(member, side)) return n;
    throw PredicateTypeError("unknown state member '" + member + "'");
  }

  NodePtr bare(const std::string& name) {
    if (kind_ == PredicateKind::State) {
      if (NodePtr n = state_member(name, 0)) return n;
    }
    if (kind_ == PredicateKind::Element) {
      if (name == "block_num") return make(Op::ElemBlock, PType::Uint);
      if (name == "sender") return make(Op::ElemSender, PType::Addr);
      if (name == "to") return make(Op::ElemTo, PType::Addr);
      if (name == "tag") return make(Op::ElemTag, PType::Str);
      if (name == "val") return make(Op::ElemVal, PType::Uint);
    }
    if (const Value* v = inst_.params.find(name)) return constant(*v, ptype_of(v->type()));
    throw PredicateTypeError("unknown name '" + name + "' in " + predicate_kind_name(kind_) +
                             " predicate");
  }

  TokenCursor cur_;
  PredicateKind kind_;
  const ContractInstance& inst_;
};

const Value& field_of(const Node& n, const Ctx& c) {
  return c.state[n.side]->fields.entries()[n.field].second;
}

const MapValue& eval_map(const Node& n, const Ctx& c) {
  if (n.op == Op::Field) return field_of(n, c).as_map();
  return n.constant.as_map();
}

std::string_view eval_text(const Node& n, const Ctx& c) {
  switch (n.op) {
    case Op::Field: {
      const Value& v = field_of(n, c);
      return v.is_address() ? std::string_view(v.as_address().id) : v.as_string();
    }
    case Op::MyId: return c.state[n.side]->my_id.id;
    case Op::ElemSender: return c.elem->msg.sender.id;
    case Op::ElemTo: return c.elem->msg.to.id;
    case Op::ElemTag: return c.elem->msg.method.text();
    default: break;
  }
  return n.constant.is_address() ? std::string_view(n.constant.as_address().id)
                                 : n.constant.as_string();
}

const Uint* find_key(const MapValue& m, std::string_view key) {
  for (const auto& [k, v] : m.entries())
    if (k.id == key) return &v;
  return nullptr;
}

Uint eval_uint(const Node& n, const Ctx& c);

bool eval_bool(const Node& n, const Ctx& c) {
  switch (n.op) {
    case Op::Const: return n.constant.as_bool();
    case Op::Field: return field_of(n, c).as_bool();
    case Op::Not: return !eval_bool(*n.kids[0], c);
    case Op::And: return eval_bool(*n.kids[0], c) && eval_bool(*n.kids[1], c);
    case Op::Or: return eval_bool(*n.kids[0], c) || eval_bool(*n.kids[1], c);
    case Op::Implies: return !eval_bool(*n.kids[0], c) || eval_bool(*n.kids[1], c);
    case Op::Eq:
    case Op::Ne: {
      const Node& a = *n.kids[0];
      const Node& b = *n.kids[1];
      bool eq;
      if (a.type == PType::Uint) {
        eq = eval_uint(a, c) == eval_uint(b, c);
      } else if (a.type == PType::Bool) {
        eq = eval_bool(a, c) == eval_bool(b, c);
      } else if (a.type == PType::Map) {
        eq = eval_map(a, c) == eval_map(b, c);
      } else {
        eq = eval_text(a, c) == eval_text(b, c);
      }
      return n.op == Op::Eq ? eq : !eq;
    }
    case Op::Le: return eval_uint(*n.kids[0], c) <= eval_uint(*n.kids[1], c);
    case Op::Lt: return eval_uint(*n.kids[0], c) < eval_uint(*n.kids[1], c);
    case Op::Ge: return eval_uint(*n.kids[0], c) >= eval_uint(*n.kids[1], c);
    case Op::Gt: return eval_uint(*n.kids[0], c) > eval_uint(*n.kids[1], c);
    case Op::Contains:
      return find_key(eval_map(*n.kids[0], c), eval_text(*n.kids[1], c)) != nullptr;
    case Op::HasEntry: {
      const Uint* v = find_key(eval_map(*n.kids[0], c), eval_text(*n.kids[1], c));
      return v != nullptr && *v == eval_uint(*n.kids[2], c);
    }
    default: break;
  }
  throw PredicateTypeError("not a boolean term");
}

Uint eval_uint(const Node& n, const Ctx& c) {
  switch (n.op) {
    case Op::Const: return n.constant.as_uint();
    case Op::Field: return field_of(n, c).as_uint();
    case Op::Balance: return c.state[n.side]->balance;
    case Op::ElemBlock: return c.elem->bstate.block_num;
    case Op::ElemVal: return c.elem->msg.val;
    case Op::Add: return eval_uint(*n.kids[0], c) + eval_uint(*n.kids[1], c);
    case Op::Sub: return uint_monus(eval_uint(*n.kids[0], c), eval_uint(*n.kids[1], c));
    case Op::Size: return Uint(eval_map(*n.kids[0], c).size());
    case Op::SumValues: {
      Uint sum = 0;
      for (const auto& e : eval_map(*n.kids[0], c).entries()) sum += e.second;
      return sum;
    }
    default: break;
  }
  throw PredicateTypeError("not a uint term");
}

void require_kind(PredicateKind have, PredicateKind want) {
  if (have != want)
    throw PredicateTypeError(std::string("a ") + predicate_kind_name(have) +
                             " predicate was applied as a " + predicate_kind_name(want) +
                             " predicate");
}

}  // namespace

Predicate::Predicate(std::string_view text, PredicateKind kind, const ContractInstance& inst)
    : text_(text), kind_(kind), root_(Builder(text, kind, inst).build()) {}

bool Predicate::holds(const CState& s) const {
  require_kind(kind_, PredicateKind::State);
  Ctx c;
  c.state[0] = &s;
  return eval_bool(*root_, c);
}

bool Predicate::holds(const CState& pre, const CState& post) const {
  require_kind(kind_, PredicateKind::Pair);
  Ctx c;
  c.state[0] = &pre;
  c.state[1] = &post;
  return eval_bool(*root_, c);
}

bool Predicate::holds(const ScheduleElement& e) const {
  require_kind(kind_, PredicateKind::Element);
  Ctx c;
  c.elem = &e;
  return eval_bool(*root_, c);
}

const std::vector<BuiltinPredicate>& builtin_predicates() {
  static const std::vector<BuiltinPredicate> registry = {
      {"balance_backed", PredicateKind::State, {},
       "!funded -> sum_values(backers) <= balance",
       "unfunded campaigns hold at least the sum of all recorded donations"},
      {"donated", PredicateKind::State, {{"b", TypeTag::Address}, {"d", TypeTag::Uint}},
       "has_entry(backers, $b, $d)", "backer b has exactly one record, of amount d"},
      {"donation_kept", PredicateKind::Pair, {{"b", TypeTag::Address}, {"d", TypeTag::Uint}},
       "has_entry(post.backers, $b, $d)", "the later state still records b's donation d"},
      {"no_claims_from", PredicateKind::Element, {{"b", TypeTag::Address}},
       "sender != $b", "the schedule element is not sent by b"},
  };
  return registry;
}

namespace {

const BuiltinPredicate& lookup_builtin(std::string_view name) {
  for (const auto& b : builtin_predicates())
    if (b.name == name) return b;
  throw UnknownPredicate(std::string(name));
}

std::string literal(const Value& v) {
  std::ostringstream os;
  if (v.is_address()) {
    os << '"' << v.as_address().id << '"';
  } else if (v.is_string()) {
    os << '"' << v.as_string() << '"';
  } else {
    os << v;
  }
  return os.str();
}

}  // namespace

std::string builtin_formula(std::string_view name, const PredicateArgs& args) {
  const BuiltinPredicate& b = lookup_builtin(name);
  std::string text = b.formula;
  for (const auto& [arg, type] : b.args) {
    auto it = args.find(arg);
    if (it == args.end())
      throw PredicateTypeError("predicate '" + b.name + "' needs argument '" + arg + "'");
    const Value& v = it->second;
    const bool ok = type == TypeTag::Address ? (v.is_address() || v.is_string())
                                             : v.type() == to_value_type(type);
    if (!ok)
      throw PredicateTypeError("argument '" + arg + "' of '" + b.name + "' expects " +
                               type_tag_name(type));
    if (v.is_string() && v.as_string().find('"') != std::string::npos)
      throw PredicateTypeError("argument '" + arg + "' contains a quote");
    const std::string placeholder = "$" + arg;
    for (auto pos = text.find(placeholder); pos != std::string::npos;
         pos = text.find(placeholder, pos))
      text.replace(pos, placeholder.size(), literal(v));
  }
  return text;
}

Predicate make_builtin(std::string_view name, const PredicateArgs& args,
                       const ContractInstance& inst) {
  const BuiltinPredicate& b = lookup_builtin(name);
  return Predicate(builtin_formula(name, args), b.kind, inst);
}

}  // namespace scilla
