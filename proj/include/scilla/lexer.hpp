#ifndef SCILLA_LEXER_HPP
#define SCILLA_LEXER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scilla/ast.hpp"

namespace scilla {

enum class TokenKind {
  Ident,
  Int,
  String,
  // keywords
  KwContract,
  KwTransition,
  KwContinuation,
  KwIf,
  KwThen,
  KwElse,
  KwLet,
  KwIn,
  KwSend,
  KwReturn,
  KwNot,
  KwTrue,
  KwFalse,
  KwMT,
  KwOkMsg,
  KwNoMsg,
  KwAddress,
  KwUint,
  KwBoolean,
  KwString,
  // punctuation and operators
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Dot,
  Assign,      // :=
  LeftArrow,   // <-
  Amp,         // &
  AmpAmp,      // &&
  PipePipe,    // ||
  FatArrow,    // =>
  Arrow,       // ->
  Eq,          // =
  EqEq,        // ==
  BangEq,      // !=
  Bang,        // !
  Le,          // <=
  Lt,          // <
  Ge,          // >=
  Gt,          // >
  Plus,
  Minus,
  Eof,
};

const char* token_kind_name(TokenKind k);

struct Token {
  TokenKind kind;
  std::string text;
  SourceSpan span;
};

enum class ParseErrorKind { Syntax, UnterminatedComment, UnterminatedString, IllegalCharacter };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, SourceSpan span, std::string expected, std::string found);

  ParseErrorKind kind() const { return kind_; }
  const SourceSpan& span() const { return span_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  ParseErrorKind kind_;
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// Splits source text into tokens. `(* ... *)` comments nest and are
/// dropped together with whitespace. The returned sequence always ends with
/// an Eof token positioned just past the last character.
std::vector<Token> tokenize(std::string_view source);

/// Forward cursor over a token vector, shared by the contract and predicate
/// parsers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(TokenKind k) const { return peek().kind == k; }
  const Token& advance();
  bool accept(TokenKind k);
  const Token& expect(TokenKind k, std::string_view context = {});
  [[noreturn]] void fail(std::string expected) const;

  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }
  /// Span of the most recently consumed token.
  SourceSpan previous_span() const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace scilla

#endif  // SCILLA_LEXER_HPP
