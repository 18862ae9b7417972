#include <sstream>
#include <stdexcept>

#include "scilla/parser.hpp"

namespace scilla {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out + "\"";
}

bool needs_parens(const Expr& e) {
  return std::holds_alternative<Expr::Binary>(e.node) || std::holds_alternative<Expr::Let>(e.node);
}

void print_expr(std::ostream& os, const Expr& e);

void print_operand(std::ostream& os, const Expr& e) {
  if (needs_parens(e)) {
    os << '(';
    print_expr(os, e);
    os << ')';
  } else {
    print_expr(os, e);
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  struct V {
    std::ostream& os;
    void operator()(const Expr::Literal& n) {
      const Value& v = n.value;
      if (v.is_uint()) {
        os << v.as_uint();
      } else if (v.is_bool()) {
        os << (v.as_bool() ? "true" : "false");
      } else if (v.is_string()) {
        os << quote(v.as_string());
      } else if (v.is_map() && v.as_map().empty()) {
        os << "[]";
      } else {
        throw std::logic_error("literal has no surface syntax");
      }
    }
    void operator()(const Expr::PayloadLit& n) {
      if (std::holds_alternative<OkMsg>(n.payload)) {
        os << "ok_msg";
      } else if (std::holds_alternative<NoMsg>(n.payload)) {
        os << "no_msg";
      } else {
        throw std::logic_error("payload literal has no surface syntax");
      }
    }
    void operator()(const Expr::Var& n) { os << n.name; }
    void operator()(const Expr::Not& n) {
      os << "not ";
      if (std::holds_alternative<Expr::Not>(n.operand->node)) {
        print_expr(os, *n.operand);
      } else {
        print_operand(os, *n.operand);
      }
    }
    void operator()(const Expr::Binary& n) {
      print_operand(os, *n.lhs);
      os << ' ' << binop_symbol(n.op) << ' ';
      print_operand(os, *n.rhs);
    }
    void operator()(const Expr::Call& n) {
      os << builtin_name(n.fn) << '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) os << ", ";
        print_expr(os, n.args[i]);
      }
      os << ')';
    }
    void operator()(const Expr::Let& n) {
      os << "let " << n.name << " = ";
      print_expr(os, *n.bound);
      os << " in ";
      print_expr(os, *n.body);
    }
  };
  std::visit(V{os}, e.node);
}

std::string typed(const TypedName& p) { return p.name + " : " + type_tag_name(p.type); }

class CmdPrinter {
 public:
  explicit CmdPrinter(std::ostream& os) : os_(os) {}

  void print(const Cmd& c, int indent) {
    std::visit([&](const auto& n) { node(n, indent); }, c.node);
  }

 private:
  void pad(int indent) { os_ << std::string(static_cast<std::size_t>(indent), ' '); }

  void node(const Cmd::FieldRead& n, int indent) {
    pad(indent);
    os_ << n.var << " <- & " << n.field << ";\n";
    print(*n.next, indent);
  }
  void node(const Cmd::ChainRead& n, int indent) {
    pad(indent);
    os_ << n.var << " <- && " << n.aspect << ";\n";
    print(*n.next, indent);
  }
  void node(const Cmd::FieldWrite& n, int indent) {
    pad(indent);
    os_ << n.field << " := ";
    print_expr(os_, n.value);
    os_ << ";\n";
    print(*n.next, indent);
  }
  void node(const Cmd::LetIn& n, int indent) {
    pad(indent);
    os_ << "let " << n.var << " = ";
    print_expr(os_, n.value);
    os_ << " in\n";
    print(*n.next, indent);
  }
  void node(const Cmd::If& n, int indent) {
    pad(indent);
    os_ << "if ";
    print_expr(os_, n.cond);
    os_ << '\n';
    pad(indent);
    os_ << "then\n";
    print(*n.then_branch, indent + 2);
    pad(indent);
    os_ << "else\n";
    print(*n.else_branch, indent + 2);
  }
  void node(const Cmd::Send& n, int indent) {
    pad(indent);
    os_ << "send (<";
    for (std::size_t i = 0; i < n.entries.size(); ++i) {
      if (i) os_ << ", ";
      os_ << n.entries[i].key << " -> ";
      print_expr(os_, n.entries[i].value);
    }
    os_ << ">, " << n.continuation << ")\n";
  }
  void node(const Cmd::Return& n, int indent) {
    pad(indent);
    os_ << "return ";
    print_expr(os_, n.value);
    os_ << '\n';
  }
  void node(const Cmd::End&, int) {}

  std::ostream& os_;
};

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string pretty_print(const ContractDef& c) {
  std::ostringstream os;
  os << "contract " << c.name << " (";
  for (std::size_t i = 0; i < c.params.size(); ++i) {
    if (i) os << ", ";
    os << typed(c.params[i]);
  }
  os << ")\n{\n";
  for (const auto& f : c.fields) {
    os << "  " << f.name << " : " << type_tag_name(f.type) << " = ";
    print_expr(os, f.init);
    os << ";\n";
  }
  os << "}\n";

  CmdPrinter printer(os);
  for (const auto& k : c.continuations) {
    os << "\ncontinuation " << k.name << " (" << typed(k.param) << ")\n";
    printer.print(k.body, 2);
  }
  for (const auto& t : c.transitions) {
    os << "\ntransition " << t.tag << " (";
    for (std::size_t i = 0; i < t.params.size(); ++i) {
      if (i) os << ", ";
      os << typed(t.params[i]);
    }
    os << ")\n";
    if (t.filter) {
      os << "  if ";
      print_expr(os, *t.filter);
      os << " =>\n";
    }
    printer.print(t.body, 2);
  }
  return os.str();
}

}  // namespace scilla
