#ifndef SCILLA_RUNTIME_HPP
#define SCILLA_RUNTIME_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scilla/ast.hpp"
#include "scilla/checks.hpp"
#include "scilla/errors.hpp"
#include "scilla/value.hpp"

namespace scilla {

/// Ordered name -> Value store (declaration order). Used both for the
/// mutable field store of a contract and for its immutable parameters.
class Store {
 public:
  using Entry = std::pair<std::string, Value>;

  Store() = default;
  explicit Store(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  const Value* find(std::string_view name) const;
  const Value& at(std::string_view name) const;
  /// Replaces an existing entry. Throws EvalError(UnknownField) when absent:
  /// the domain of a store never changes after instantiation.
  void set(std::string_view name, Value v);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Store&, const Store&) = default;
  friend bool operator<(const Store& a, const Store& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Entry> entries_;
};

struct CState {
  Address my_id;
  Uint balance;
  Store fields;

  friend bool operator==(const CState&, const CState&) = default;
  friend bool operator<(const CState& a, const CState& b) {
    return std::tie(a.my_id, a.balance, a.fields) < std::tie(b.my_id, b.balance, b.fields);
  }
};

struct BState {
  Uint block_num;
  friend bool operator==(const BState&, const BState&) = default;
};

struct Step {
  CState pre;
  CState post;
  std::optional<Message> out;
  friend bool operator==(const Step&, const Step&) = default;
};

using Trace = std::vector<Step>;

struct ScheduleElement {
  BState bstate;
  Message msg;
  friend bool operator==(const ScheduleElement&, const ScheduleElement&) = default;
};

using Schedule = std::vector<ScheduleElement>;

enum class InstantiationErrorKind { MissingParam, ParamTypeMismatch, UnknownParam, BadInitializer };

class InstantiationError : public std::runtime_error {
 public:
  InstantiationError(InstantiationErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  InstantiationErrorKind kind() const { return kind_; }

 private:
  InstantiationErrorKind kind_;
};

/// A contract definition bound to parameter values, an address and an
/// initial balance. Cheap to copy; the definition is shared.
struct ContractInstance {
  std::shared_ptr<const ContractDef> def;
  Store params;
  CState state0;
};

ContractInstance instantiate(std::shared_ptr<const ContractDef> def, Address id, Uint init_bal,
                             const Store& params);

struct TransitionOutcome {
  Store fields;
  std::optional<Message> out;
  /// Continuation named by the final `send`, or empty for MT / return / none.
  std::string continuation;
  bool returned = false;
  /// Set when the body raised an evaluation error (the outcome is then the
  /// exception outcome: fields unchanged, no output).
  std::optional<EvalErrorKind> error;
};

/// Dispatches `m` to the transition whose tag matches m.method and whose
/// filter accepts it. Unknown tags, rejecting filters and runtime errors all
/// yield the exception outcome (fields unchanged, no output).
TransitionOutcome apply_transition(const ContractInstance& inst, const Uint& bal,
                                   const Store& fields, const Message& m, const BState& bc);

/// Runs continuation `name` with the value carried by return message `m`.
TransitionOutcome invoke_continuation(const ContractInstance& inst, const std::string& name,
                                      const Uint& bal, const Store& fields, const Message& m,
                                      const BState& bc);

/// One protocol step: post.balance = (pre.balance + m.val) - out.val when an
/// output exists (natural subtraction), pre.balance otherwise.
Step step_prot(const ContractInstance& inst, const CState& pre, const BState& bc,
               const Message& m);

/// Builds a Step from a transition outcome using the balance law above.
Step make_step(const CState& pre, const Message& m, TransitionOutcome outcome);

Trace execute(const ContractInstance& inst, const CState& pre, const Schedule& sc);

/// Like execute from state0, except an empty schedule yields the single
/// identity step [Step state0 state0 none].
Trace execute0(const ContractInstance& inst, const Schedule& sc);

inline const char* const kLintOverdraw = "OVERDRAW";
inline const char* const kLintAbsorbedFunds = "ABSORBED_FUNDS";

/// Warning iff the balance update truncated: out.val > pre.balance + m.val.
std::optional<Diagnostic> overdraw_lint(const Step& step, const Message& m);

/// Note when a step answered with a message, kept the incoming value and
/// left every field untouched (e.g. a refused donation).
std::optional<Diagnostic> absorbed_funds_note(const Step& step, const Message& m);

}  // namespace scilla

#endif  // SCILLA_RUNTIME_HPP
