#include "scilla/lexer.hpp"

#include <cctype>
#include <unordered_map>

namespace scilla {

ParseError::ParseError(ParseErrorKind kind, SourceSpan span, std::string expected,
                       std::string found)
    : std::runtime_error(std::to_string(span.line) + ":" + std::to_string(span.column) +
                         ": expected " + expected + ", found " + found),
      kind_(kind),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

const char* token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Int: return "integer";
    case TokenKind::String: return "string literal";
    case TokenKind::KwContract: return "'contract'";
    case TokenKind::KwTransition: return "'transition'";
    case TokenKind::KwContinuation: return "'continuation'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwThen: return "'then'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwLet: return "'let'";
    case TokenKind::KwIn: return "'in'";
    case TokenKind::KwSend: return "'send'";
    case TokenKind::KwReturn: return "'return'";
    case TokenKind::KwNot: return "'not'";
    case TokenKind::KwTrue: return "'true'";
    case TokenKind::KwFalse: return "'false'";
    case TokenKind::KwMT: return "'MT'";
    case TokenKind::KwOkMsg: return "'ok_msg'";
    case TokenKind::KwNoMsg: return "'no_msg'";
    case TokenKind::KwAddress: return "'address'";
    case TokenKind::KwUint: return "'uint'";
    case TokenKind::KwBoolean: return "'boolean'";
    case TokenKind::KwString: return "'string'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semi: return "';'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Assign: return "':='";
    case TokenKind::LeftArrow: return "'<-'";
    case TokenKind::Amp: return "'&'";
    case TokenKind::AmpAmp: return "'&&'";
    case TokenKind::PipePipe: return "'||'";
    case TokenKind::FatArrow: return "'=>'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Eq: return "'='";
    case TokenKind::EqEq: return "'=='";
    case TokenKind::BangEq: return "'!='";
    case TokenKind::Bang: return "'!'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Eof: return "end of input";
  }
  return "?";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> table = {
      {"contract", TokenKind::KwContract},
      {"transition", TokenKind::KwTransition},
      {"continuation", TokenKind::KwContinuation},
      {"if", TokenKind::KwIf},
      {"then", TokenKind::KwThen},
      {"else", TokenKind::KwElse},
      {"let", TokenKind::KwLet},
      {"in", TokenKind::KwIn},
      {"send", TokenKind::KwSend},
      {"return", TokenKind::KwReturn},
      {"not", TokenKind::KwNot},
      {"true", TokenKind::KwTrue},
      {"false", TokenKind::KwFalse},
      {"MT", TokenKind::KwMT},
      {"ok_msg", TokenKind::KwOkMsg},
      {"no_msg", TokenKind::KwNoMsg},
      {"address", TokenKind::KwAddress},
      {"uint", TokenKind::KwUint},
      {"boolean", TokenKind::KwBoolean},
      {"string", TokenKind::KwString},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (at_end()) {
        out.push_back(Token{TokenKind::Eof, "", SourceSpan{line_, col_, 0}});
        return out;
      }
      out.push_back(next_token());
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '(' && peek(1) == '*') {
        skip_comment();
        continue;
      }
      return;
    }
  }

  void skip_comment() {
    SourceSpan start{line_, col_, 2};
    int depth = 0;
    do {
      if (at_end())
        throw ParseError(ParseErrorKind::UnterminatedComment, start, "'*)'", "end of input");
      if (peek() == '(' && peek(1) == '*') {
        ++depth;
        advance();
        advance();
      } else if (peek() == '*' && peek(1) == ')') {
        --depth;
        advance();
        advance();
      } else {
        advance();
      }
    } while (depth > 0);
  }

  Token make(TokenKind kind, std::size_t begin, int line, int col) {
    std::string text(src_.substr(begin, pos_ - begin));
    return Token{kind, text, SourceSpan{line, col, static_cast<int>(pos_ - begin)}};
  }

  Token next_token() {
    const std::size_t begin = pos_;
    const int line = line_;
    const int col = col_;
    const char c = peek();

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      Token t = make(TokenKind::Ident, begin, line, col);
      if (auto it = keywords().find(t.text); it != keywords().end()) t.kind = it->second;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      return make(TokenKind::Int, begin, line, col);
    }
    if (c == '"') return string_literal(line, col);

    auto op = [&](TokenKind k, int len) {
      for (int i = 0; i < len; ++i) advance();
      return make(k, begin, line, col);
    };
    const char n = peek(1);
    switch (c) {
      case '(': return op(TokenKind::LParen, 1);
      case ')': return op(TokenKind::RParen, 1);
      case '{': return op(TokenKind::LBrace, 1);
      case '}': return op(TokenKind::RBrace, 1);
      case '[': return op(TokenKind::LBracket, 1);
      case ']': return op(TokenKind::RBracket, 1);
      case ',': return op(TokenKind::Comma, 1);
      case ';': return op(TokenKind::Semi, 1);
      case '.': return op(TokenKind::Dot, 1);
      case '+': return op(TokenKind::Plus, 1);
      case ':': return n == '=' ? op(TokenKind::Assign, 2) : op(TokenKind::Colon, 1);
      case '&': return n == '&' ? op(TokenKind::AmpAmp, 2) : op(TokenKind::Amp, 1);
      case '-': return n == '>' ? op(TokenKind::Arrow, 2) : op(TokenKind::Minus, 1);
      case '!': return n == '=' ? op(TokenKind::BangEq, 2) : op(TokenKind::Bang, 1);
      case '>': return n == '=' ? op(TokenKind::Ge, 2) : op(TokenKind::Gt, 1);
      case '=':
        if (n == '=') return op(TokenKind::EqEq, 2);
        if (n == '>') return op(TokenKind::FatArrow, 2);
        return op(TokenKind::Eq, 1);
      case '<':
        if (n == '-') return op(TokenKind::LeftArrow, 2);
        if (n == '=') return op(TokenKind::Le, 2);
        return op(TokenKind::Lt, 1);
      case '|':
        if (n == '|') return op(TokenKind::PipePipe, 2);
        break;
      default: break;
    }
    std::string shown(1, c);
    throw ParseError(ParseErrorKind::IllegalCharacter, SourceSpan{line, col, 1}, "a token",
                     "'" + shown + "'");
  }

  Token string_literal(int line, int col) {
    const std::size_t begin = pos_;
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (at_end() || peek() == '\n')
        throw ParseError(ParseErrorKind::UnterminatedString, SourceSpan{line, col, 1}, "'\"'",
                         at_end() ? "end of input" : "end of line");
      char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) continue;
        char e = peek();
        advance();
        value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
      } else {
        value.push_back(c);
      }
    }
    return Token{TokenKind::String, value,
                 SourceSpan{line, col, static_cast<int>(pos_ - begin)}};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace scilla

namespace scilla {

const Token& TokenCursor::peek(std::size_t ahead) const {
  const std::size_t i = pos_ + ahead;
  return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& TokenCursor::advance() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenCursor::accept(TokenKind k) {
  if (!at(k)) return false;
  advance();
  return true;
}

const Token& TokenCursor::expect(TokenKind k, std::string_view context) {
  if (!at(k)) {
    std::string what = token_kind_name(k);
    if (!context.empty()) what += std::string(" ") + std::string(context);
    fail(what);
  }
  return advance();
}

void TokenCursor::fail(std::string expected) const {
  const Token& t = peek();
  std::string found = t.kind == TokenKind::Eof ? "end of input" : "'" + t.text + "'";
  throw ParseError(ParseErrorKind::Syntax, t.span, std::move(expected), std::move(found));
}

SourceSpan TokenCursor::previous_span() const {
  return pos_ == 0 ? tokens_.front().span : tokens_[pos_ - 1].span;
}

}  // namespace scilla
