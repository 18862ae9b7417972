#include "scilla/parser.hpp"

#include <utility>

namespace scilla {

namespace {

bool ends_block(TokenKind k) {
  return k == TokenKind::KwElse || k == TokenKind::KwTransition ||
         k == TokenKind::KwContinuation || k == TokenKind::Eof;
}

class Parser {
 public:
  explicit Parser(std::string_view source) : cur_(tokenize(source)) {}

  ContractDef contract() {
    ContractDef c;
    c.span = cur_.expect(TokenKind::KwContract).span;
    c.name = cur_.expect(TokenKind::Ident, "(contract name)").text;
    c.params = param_list();
    cur_.expect(TokenKind::LBrace, "(field block)");
    while (!cur_.at(TokenKind::RBrace)) c.fields.push_back(field_decl());
    cur_.expect(TokenKind::RBrace);
    for (;;) {
      if (cur_.at(TokenKind::KwTransition)) {
        c.transitions.push_back(transition());
      } else if (cur_.at(TokenKind::KwContinuation)) {
        c.continuations.push_back(continuation());
      } else if (cur_.at(TokenKind::Eof)) {
        break;
      } else {
        cur_.fail("'transition', 'continuation' or end of input");
      }
    }
    return c;
  }

  Expr standalone_expr() {
    Expr e = expr();
    cur_.expect(TokenKind::Eof);
    return e;
  }

 private:
  TypeTag type() {
    const Token& t = cur_.peek();
    switch (t.kind) {
      case TokenKind::KwUint: cur_.advance(); return TypeTag::Uint;
      case TokenKind::KwBoolean: cur_.advance(); return TypeTag::Bool;
      case TokenKind::KwString: cur_.advance(); return TypeTag::String;
      case TokenKind::KwAddress:
        cur_.advance();
        if (cur_.accept(TokenKind::FatArrow)) {
          cur_.expect(TokenKind::KwUint, "(map value type)");
          return TypeTag::Map;
        }
        return TypeTag::Address;
      default: cur_.fail("a type");
    }
  }

  TypedName typed_name() {
    const Token& id = cur_.expect(TokenKind::Ident, "(parameter name)");
    TypedName p{id.text, TypeTag::Uint, id.span};
    cur_.expect(TokenKind::Colon);
    p.type = type();
    return p;
  }

  std::vector<TypedName> param_list() {
    std::vector<TypedName> out;
    cur_.expect(TokenKind::LParen, "(parameter list)");
    if (cur_.accept(TokenKind::RParen)) return out;
    do {
      out.push_back(typed_name());
    } while (cur_.accept(TokenKind::Comma));
    cur_.expect(TokenKind::RParen);
    return out;
  }

  FieldDecl field_decl() {
    const Token& id = cur_.expect(TokenKind::Ident, "(field name)");
    FieldDecl f{id.text, TypeTag::Uint, Expr{}, id.span};
    cur_.expect(TokenKind::Colon);
    f.type = type();
    cur_.expect(TokenKind::Eq, "(field initializer)");
    f.init = expr();
    cur_.expect(TokenKind::Semi);
    return f;
  }

  TransitionDef transition() {
    TransitionDef t{};
    t.span = cur_.expect(TokenKind::KwTransition).span;
    t.tag = cur_.expect(TokenKind::Ident, "(transition name)").text;
    t.params = param_list();
    if (cur_.at(TokenKind::KwIf)) {
      // `if e =>` is a filter; `if e then` starts the body.
      const std::size_t mark = cur_.position();
      cur_.advance();
      Expr cond = expr();
      if (cur_.accept(TokenKind::FatArrow)) {
        t.filter = std::move(cond);
      } else {
        cur_.rewind(mark);
      }
    }
    t.body = cmd();
    return t;
  }

  ContinuationDef continuation() {
    ContinuationDef k{};
    k.span = cur_.expect(TokenKind::KwContinuation).span;
    k.name = cur_.expect(TokenKind::Ident, "(continuation name)").text;
    cur_.expect(TokenKind::LParen, "(continuation parameter)");
    k.param = typed_name();
    cur_.expect(TokenKind::RParen);
    k.body = cmd();
    return k;
  }

  Cmd cmd() {
    const Token& t = cur_.peek();
    if (ends_block(t.kind)) return Cmd{Cmd::End{}, SourceSpan{t.span.line, t.span.column, 0}};

    const SourceSpan span = t.span;
    switch (t.kind) {
      case TokenKind::Ident: {
        std::string name = cur_.advance().text;
        if (cur_.accept(TokenKind::LeftArrow)) {
          if (cur_.accept(TokenKind::AmpAmp)) {
            std::string aspect = cur_.expect(TokenKind::Ident, "(blockchain aspect)").text;
            cur_.expect(TokenKind::Semi);
            return Cmd{Cmd::ChainRead{std::move(name), std::move(aspect), cmd()}, span};
          }
          cur_.expect(TokenKind::Amp, "or '&&' after '<-'");
          std::string field = cur_.expect(TokenKind::Ident, "(field name)").text;
          cur_.expect(TokenKind::Semi);
          return Cmd{Cmd::FieldRead{std::move(name), std::move(field), cmd()}, span};
        }
        if (cur_.accept(TokenKind::Assign)) {
          Expr value = expr();
          cur_.expect(TokenKind::Semi);
          return Cmd{Cmd::FieldWrite{std::move(name), std::move(value), cmd()}, span};
        }
        cur_.fail("'<-' or ':='");
      }
      case TokenKind::KwLet: {
        cur_.advance();
        std::string name = cur_.expect(TokenKind::Ident, "(let binding)").text;
        cur_.expect(TokenKind::Eq);
        Expr value = expr();
        cur_.expect(TokenKind::KwIn);
        return Cmd{Cmd::LetIn{std::move(name), std::move(value), cmd()}, span};
      }
      case TokenKind::KwIf: {
        cur_.advance();
        Expr cond = expr();
        cur_.expect(TokenKind::KwThen);
        Cmd then_branch = cmd();
        cur_.expect(TokenKind::KwElse);
        Cmd else_branch = cmd();
        return Cmd{Cmd::If{std::move(cond), std::move(then_branch), std::move(else_branch)},
                   span};
      }
      case TokenKind::KwSend: {
        cur_.advance();
        Cmd::Send send;
        cur_.expect(TokenKind::LParen);
        cur_.expect(TokenKind::Lt, "(message literal)");
        do {
          const Token& key = cur_.expect(TokenKind::Ident, "(message entry name)");
          MessageEntry entry{key.text, Expr{}, key.span};
          cur_.expect(TokenKind::Arrow);
          entry.value = expr();
          send.entries.push_back(std::move(entry));
        } while (cur_.accept(TokenKind::Comma));
        cur_.expect(TokenKind::Gt, "(end of message literal)");
        cur_.expect(TokenKind::Comma);
        if (cur_.accept(TokenKind::KwMT)) {
          send.continuation = kEmptyContinuation;
        } else {
          send.continuation = cur_.expect(TokenKind::Ident, "(continuation)").text;
        }
        cur_.expect(TokenKind::RParen);
        terminal();
        return Cmd{std::move(send), span};
      }
      case TokenKind::KwReturn: {
        cur_.advance();
        Expr value = expr();
        terminal();
        return Cmd{Cmd::Return{std::move(value)}, span};
      }
      default: cur_.fail("a command");
    }
  }

  void terminal() {
    if (!ends_block(cur_.peek().kind)) cur_.fail("end of block after tail command");
  }

  Expr expr() { return or_expr(); }

  Expr binary(BinOp op, Expr lhs, Expr rhs, SourceSpan span) {
    return Expr{Expr::Binary{op, std::move(lhs), std::move(rhs)}, span};
  }

  Expr or_expr() {
    Expr lhs = and_expr();
    while (cur_.at(TokenKind::PipePipe)) {
      SourceSpan span = cur_.advance().span;
      lhs = binary(BinOp::Or, std::move(lhs), and_expr(), span);
    }
    return lhs;
  }

  Expr and_expr() {
    Expr lhs = cmp_expr();
    while (cur_.at(TokenKind::AmpAmp)) {
      SourceSpan span = cur_.advance().span;
      lhs = binary(BinOp::And, std::move(lhs), cmp_expr(), span);
    }
    return lhs;
  }

  Expr cmp_expr() {
    Expr lhs = add_expr();
    BinOp op;
    switch (cur_.peek().kind) {
      case TokenKind::EqEq: op = BinOp::Eq; break;
      case TokenKind::Le: op = BinOp::Le; break;
      case TokenKind::Lt: op = BinOp::Lt; break;
      default: return lhs;
    }
    SourceSpan span = cur_.advance().span;
    return binary(op, std::move(lhs), add_expr(), span);
  }

  Expr add_expr() {
    Expr lhs = unary_expr();
    for (;;) {
      BinOp op;
      if (cur_.at(TokenKind::Plus)) {
        op = BinOp::Add;
      } else if (cur_.at(TokenKind::Minus)) {
        op = BinOp::Sub;
      } else {
        return lhs;
      }
      SourceSpan span = cur_.advance().span;
      lhs = binary(op, std::move(lhs), unary_expr(), span);
    }
  }

  Expr unary_expr() {
    if (cur_.at(TokenKind::KwNot)) {
      SourceSpan span = cur_.advance().span;
      return Expr{Expr::Not{unary_expr()}, span};
    }
    return primary();
  }

  Expr primary() {
    const Token& t = cur_.peek();
    const SourceSpan span = t.span;
    switch (t.kind) {
      case TokenKind::Int: {
        Uint n(cur_.advance().text);
        return Expr{Expr::Literal{Value(std::move(n))}, span};
      }
      case TokenKind::String:
        return Expr{Expr::Literal{Value(cur_.advance().text)}, span};
      case TokenKind::KwTrue: cur_.advance(); return Expr{Expr::Literal{Value(true)}, span};
      case TokenKind::KwFalse: cur_.advance(); return Expr{Expr::Literal{Value(false)}, span};
      case TokenKind::KwOkMsg: cur_.advance(); return Expr{Expr::PayloadLit{OkMsg{}}, span};
      case TokenKind::KwNoMsg: cur_.advance(); return Expr{Expr::PayloadLit{NoMsg{}}, span};
      case TokenKind::LBracket:
        cur_.advance();
        cur_.expect(TokenKind::RBracket, "(only the empty map literal is supported)");
        return Expr{Expr::Literal{Value(MapValue{})}, span};
      case TokenKind::LParen: {
        cur_.advance();
        Expr inner = expr();
        cur_.expect(TokenKind::RParen);
        return inner;
      }
      case TokenKind::KwLet: {
        cur_.advance();
        std::string name = cur_.expect(TokenKind::Ident, "(let binding)").text;
        cur_.expect(TokenKind::Eq);
        Expr bound = expr();
        cur_.expect(TokenKind::KwIn);
        Expr body = expr();
        return Expr{Expr::Let{std::move(name), std::move(bound), std::move(body)}, span};
      }
      case TokenKind::Ident: {
        std::string name = cur_.advance().text;
        if (cur_.at(TokenKind::LParen)) {
          std::optional<Builtin> fn;
          if (name == "put") fn = Builtin::Put;
          if (name == "get") fn = Builtin::Get;
          if (name == "remove") fn = Builtin::Remove;
          if (name == "contains") fn = Builtin::Contains;
          if (!fn) cur_.fail("an operator (unknown function '" + name + "')");
          cur_.advance();
          std::vector<Expr> args;
          if (!cur_.at(TokenKind::RParen)) {
            do {
              args.push_back(expr());
            } while (cur_.accept(TokenKind::Comma));
          }
          cur_.expect(TokenKind::RParen);
          return Expr{Expr::Call{*fn, std::move(args)}, span};
        }
        return Expr{Expr::Var{std::move(name)}, span};
      }
      default: cur_.fail("an expression");
    }
  }

  TokenCursor cur_;
};

}  // namespace

ContractDef parse_contract(std::string_view source) { return Parser(source).contract(); }

Expr parse_expr(std::string_view source) { return Parser(source).standalone_expr(); }

}  // namespace scilla
