#ifndef SCILLA_PROPCHECK_HPP
#define SCILLA_PROPCHECK_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "scilla/predicate.hpp"
#include "scilla/runtime.hpp"

namespace scilla {

/// Finite environment: every schedule element pairs one block state with
/// one message. Element i is (bstates[i / |messages|], messages[i % |messages|]).
struct Alphabet {
  std::vector<BState> bstates;
  std::vector<Message> messages;

  std::size_t size() const { return bstates.size() * messages.size(); }
  ScheduleElement element(std::size_t i) const;
};

/// Blocks {1, 10, 11} and every (sender in {A1, A2, A0}, val in {0, 5},
/// tag in {donate, getfunds, claim}) message to C with an empty text body:
/// 3 * 18 = 54 elements.
Alphabet canonical_alphabet();

/// Parameters the canonical alphabet is built around:
/// owner = A0, max_block = 10, goal = 100.
Store canonical_params();

/// Sum over k = 0..depth of alphabet_size^k.
Uint schedule_count(std::size_t alphabet_size, std::size_t depth);

/// Streams every schedule of length 0..depth over `a` exactly once, shorter
/// schedules first and lexicographically by element index within a length.
class ScheduleEnumerator {
 public:
  ScheduleEnumerator(const Alphabet& a, std::size_t depth);

  /// Advances to the next schedule; false once the stream is exhausted.
  bool next();
  const std::vector<std::size_t>& indices() const { return idx_; }
  Schedule schedule() const;

 private:
  const Alphabet& a_;
  std::size_t depth_;
  std::vector<std::size_t> idx_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Schedule> enumerate_schedules(const Alphabet& a, std::size_t depth);

struct Bound {
  std::size_t depth = 0;
  std::size_t alphabet_size = 0;
  /// Second depth for two-phase checks (continuation depth), else 0.
  std::size_t depth2 = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct Holds {
  /// Schedules covered (for state-deduplicating checks: schedules whose
  /// outcome was decided, counted without enumerating duplicates).
  Uint schedules_checked = 0;
  /// States that satisfied the premise of a conditional property.
  std::uint64_t premise_states = 0;
  /// States evaluated: one per schedule endpoint for check_safe, distinct
  /// states for deduplicating checks, generator draws for inductive mode.
  std::uint64_t states_explored = 0;
};

struct Violated {
  /// Replay from state0 (or from `start` when set) to reproduce the failure.
  Schedule schedule;
  Trace trace;
  std::size_t failing_index = 0;
  /// since_as_long: the part of `schedule` that follows the p-state.
  std::size_t continuation_from = 0;
  /// Inductive mode: the generated pre-state.
  std::optional<CState> start;
  /// can_claim_back: block at which no refund message exists.
  std::optional<BState> at_block;
  std::string detail;
};

struct Inconclusive {
  std::string reason;
};

struct Verdict {
  std::string property;
  std::string mode;
  Bound bound;
  std::variant<Holds, Violated, Inconclusive> result;

  bool holds() const { return std::holds_alternative<Holds>(result); }
  bool violated() const { return std::holds_alternative<Violated>(result); }
  const Holds& as_holds() const { return std::get<Holds>(result); }
  const Violated& as_violated() const { return std::get<Violated>(result); }
};

const char* verdict_kind(const Verdict& v);

/// Exhaustive safety check: I must hold on the pre and post state of every
/// step of execute0(sc) for every schedule sc of length <= depth. Prefixes
/// share work (depth-first over the schedule tree) and top-level branches
/// run in parallel on up to `jobs` OpenMP threads (0 = runtime default).
/// The witness is the shortest, then lexicographically least, violating
/// schedule, independent of the thread count.
Verdict check_safe(const ContractInstance& inst, const Predicate& I, const Alphabet& a,
                   std::size_t depth, int jobs = 0);

/// Serial reference for check_safe: replays execute0 on every enumerated
/// schedule in order and reports the first violation.
Verdict check_safe_reference(const ContractInstance& inst, const Predicate& I,
                             const Alphabet& a, std::size_t depth);

/// Produces candidate pre-states for the induction step.
using StateGenerator = std::function<CState(std::mt19937_64&)>;

/// Random field stores for `inst`: uints and the balance in [0, 2 * goal]
/// (or [0, 100] without a `goal` parameter), addresses drawn from the
/// senders and recipients of `a` plus the address-typed parameters and the
/// contract's own id, maps with distinct keys from that pool.
StateGenerator random_state_generator(const ContractInstance& inst, const Alphabet& a);

/// Induction check: I(state0), then for `samples` generated states
/// satisfying I and every element of `a`, I(post(step_prot(pre, bc, m))).
/// Generated states are rejection-sampled against I; more than 1000
/// rejections per requested sample gives Inconclusive (GeneratorExhausted).
Verdict check_safe_inductive(const ContractInstance& inst, const Predicate& I,
                             const StateGenerator& gen, const Alphabet& a,
                             std::uint64_t samples, std::uint64_t seed);

/// true iff st2 is the post state of the last step of execute(st, sc),
/// taking the identity step on st for an empty schedule.
bool reachable(const ContractInstance& inst, const CState& st, const CState& st2,
               const Schedule& sc);

/// For every state st reachable within reach_depth with p(st), and every
/// continuation of length <= cont_depth whose elements all satisfy r, q(st,
/// st') must hold at the endpoint st'. States are deduplicated: a step is a
/// function of (state, element), so exploring each distinct state once is
/// exact.
Verdict check_since_as_long(const ContractInstance& inst, const Predicate& p,
                            const Predicate& q, const Predicate& r, const Alphabet& a,
                            std::size_t reach_depth, std::size_t cont_depth);

/// For every state st reachable within depth and every block bc in `a` such
/// that b donated d, the campaign is unfunded, balance < goal and
/// max_block < bc.block_num, some message from b in `a` must make the
/// contract answer with exactly d, sent by the contract to b with tag
/// "main" and body ok_msg.
Verdict check_can_claim_back(const ContractInstance& inst, const Address& b, const Uint& d,
                             const Alphabet& a, std::size_t depth);

}  // namespace scilla

#endif  // SCILLA_PROPCHECK_HPP
