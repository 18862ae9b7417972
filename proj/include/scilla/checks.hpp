#ifndef SCILLA_CHECKS_HPP
#define SCILLA_CHECKS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "scilla/ast.hpp"

namespace scilla {

enum class Severity { Error, Warning, Note };

const char* severity_name(Severity s);

struct Diagnostic {
  Severity severity = Severity::Error;
  SourceSpan span;
  std::string rule_id;
  std::string message;

  friend bool operator==(const Diagnostic& a, const Diagnostic& b) {
    return a.severity == b.severity && a.span.line == b.span.line &&
           a.span.column == b.span.column && a.rule_id == b.rule_id && a.message == b.message;
  }
};

/// Empty report <=> contract accepted.
struct CheckReport {
  std::vector<Diagnostic> diagnostics;

  bool empty() const { return diagnostics.empty(); }
  bool has_errors() const;
  void append(const CheckReport& other);
  std::size_t count(std::string_view rule_id) const;
};

// Rule identifiers.
inline const char* const kRuleUniqueTags = "UNIQUE_TAGS";
inline const char* const kRuleFilterEffect = "FILTER_EFFECT";
inline const char* const kRuleTailPosition = "TAIL_POSITION";
inline const char* const kRuleTypeMismatch = "TYPE_MISMATCH";
inline const char* const kRuleUnbound = "UNBOUND_VARIABLE";
inline const char* const kRuleUnknownField = "UNKNOWN_FIELD";
inline const char* const kRuleReadonlyField = "READONLY_FIELD";
inline const char* const kRuleUnknownAspect = "UNKNOWN_ASPECT";
inline const char* const kRuleMessageComponent = "MESSAGE_COMPONENT";
inline const char* const kRuleMessageShape = "MESSAGE_SHAPE";
inline const char* const kRuleUnknownContinuation = "UNKNOWN_CONTINUATION";
inline const char* const kRuleShadowing = "SHADOWING";
inline const char* const kRuleFieldInit = "FIELD_INIT";

/// Transition and continuation tags must be pairwise distinct. Tags compare
/// case-insensitively because dispatch does.
CheckReport check_unique_tags(const ContractDef& c);

/// Filters may only read message components and contract parameters.
CheckReport check_filter_purity(const ContractDef& c);

/// Every path through every transition and continuation body ends in
/// `send` or `return`.
CheckReport check_tail_position(const ContractDef& c);

/// Monomorphic type check over {uint, boolean, address, string, map}.
CheckReport typecheck(const ContractDef& c);

/// All of the above, in a fixed order.
CheckReport check_all(const ContractDef& c);

/// `file:line:col: severity[rule-id]: message`
std::string render(const Diagnostic& d, std::string_view file);
void render(std::ostream& os, const CheckReport& r, std::string_view file);

}  // namespace scilla

#endif  // SCILLA_CHECKS_HPP
