#ifndef SCILLA_PARSER_HPP
#define SCILLA_PARSER_HPP

#include <string>
#include <string_view>

#include "scilla/ast.hpp"
#include "scilla/lexer.hpp"

namespace scilla {

/// Parses one contract. Fails fast: the first syntax error is thrown as
/// ParseError.
///
/// Grammar (informal):
///
///   contract     ::= 'contract' ID '(' [param {',' param}] ')'
///                    '{' {ID ':' type '=' expr ';'} '}' {component}
///   component    ::= 'transition' ID '(' [params] ')' ['if' expr '=>'] cmd
///                  | 'continuation' ID '(' param ')' cmd
///   cmd          ::= ID '<-' '&' ID ';' cmd  |  ID '<-' '&&' ID ';' cmd
///                  | ID ':=' expr ';' cmd    |  'let' ID '=' expr 'in' cmd
///                  | 'if' expr 'then' cmd 'else' cmd
///                  | 'send' '(' '<' entries '>' ',' (ID | 'MT') ')'
///                  | 'return' expr  |  <empty>
///   type         ::= 'uint' | 'boolean' | 'string' | 'address' ['=>' 'uint']
ContractDef parse_contract(std::string_view source);

/// Parses a standalone expression (used by tests and tools).
Expr parse_expr(std::string_view source);

/// Canonical source rendering; parse_contract(pretty_print(c)) == c.
std::string pretty_print(const ContractDef& c);
std::string pretty_print(const Expr& e);

}  // namespace scilla

#endif  // SCILLA_PARSER_HPP
