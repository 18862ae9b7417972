#ifndef SCILLA_PREDICATE_HPP
#define SCILLA_PREDICATE_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scilla/runtime.hpp"

namespace scilla {

/// What a predicate ranges over.
///   State   - one contract state: field names, `balance`, `my_id`.
///   Pair    - two states, written `pre.x` / `post.x`.
///   Element - one schedule element: `block_num`, `sender`, `to`, `tag`, `val`.
/// Contract parameters are visible as constants in every kind.
enum class PredicateKind { State, Pair, Element };

const char* predicate_kind_name(PredicateKind k);

class PredicateTypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownPredicate : public std::runtime_error {
 public:
  explicit UnknownPredicate(const std::string& name)
      : std::runtime_error("unknown predicate '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A boolean formula bound to one contract instance.
///
/// Syntax (loosest first): `a -> b` (right associative), `||`, `&&`,
/// `!`/`not`, comparisons `== != <= < >= >`, `+ -` on uints, atoms. Atoms
/// are integer/string literals, `true`, `false`, names, parentheses and the
/// functions sum_values(m), size(m), contains(m, k), has_entry(m, k, v).
/// String literals compare equal to addresses with the same text.
class Predicate {
 public:
  /// Parses and type checks `text`. Throws ParseError on syntax errors and
  /// PredicateTypeError on ill-typed or unresolved names.
  Predicate(std::string_view text, PredicateKind kind, const ContractInstance& inst);

  PredicateKind kind() const { return kind_; }
  const std::string& text() const { return text_; }

  bool holds(const CState& s) const;
  bool holds(const CState& pre, const CState& post) const;
  bool holds(const ScheduleElement& e) const;

  struct Node;

 private:
  std::string text_;
  PredicateKind kind_;
  std::shared_ptr<const Node> root_;
};

/// Named predicate defined by a template over its arguments.
struct BuiltinPredicate {
  std::string name;
  PredicateKind kind;
  /// Argument names in order, each with its type ("address" or "uint").
  std::vector<std::pair<std::string, TypeTag>> args;
  /// Formula text; `$name` is replaced by the argument literal.
  std::string formula;
  std::string summary;
};

using PredicateArgs = std::map<std::string, Value>;

const std::vector<BuiltinPredicate>& builtin_predicates();

/// Looks up `name`, substitutes `args` and binds it to `inst`. Throws
/// UnknownPredicate for an unregistered name and PredicateTypeError for a
/// missing or ill-typed argument.
Predicate make_builtin(std::string_view name, const PredicateArgs& args,
                       const ContractInstance& inst);

/// Formula text of builtin `name` with `args` substituted.
std::string builtin_formula(std::string_view name, const PredicateArgs& args);

}  // namespace scilla

#endif  // SCILLA_PREDICATE_HPP
