#include "scilla/propcheck.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <sstream>

namespace scilla {

ScheduleElement Alphabet::element(std::size_t i) const {
  return ScheduleElement{bstates[i / messages.size()], messages[i % messages.size()]};
}

Alphabet canonical_alphabet() {
  Alphabet a;
  for (unsigned b : {1u, 10u, 11u}) a.bstates.push_back(BState{Uint(b)});
  for (const char* sender : {"A1", "A2", "A0"})
    for (unsigned val : {0u, 5u})
      for (const char* tag : {"donate", "getfunds", "claim"})
        a.messages.push_back(
            Message{Uint(val), Address{sender}, Address{"C"}, Tag(tag), TextPayload{""}});
  return a;
}

Store canonical_params() {
  return Store({{"owner", Value::address("A0")},
                {"max_block", Value::uint(10)},
                {"goal", Value::uint(100)}});
}

Uint schedule_count(std::size_t alphabet_size, std::size_t depth) {
  Uint total = 0;
  Uint term = 1;
  for (std::size_t k = 0; k <= depth; ++k) {
    total += term;
    term *= alphabet_size;
  }
  return total;
}

ScheduleEnumerator::ScheduleEnumerator(const Alphabet& a, std::size_t depth)
    : a_(a), depth_(depth) {}

bool ScheduleEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  const std::size_t n = a_.size();
  if (n == 0) {
    done_ = true;
    return false;
  }
  for (std::size_t i = idx_.size(); i > 0; --i) {
    if (++idx_[i - 1] < n) return true;
    idx_[i - 1] = 0;
  }
  if (idx_.size() == depth_) {
    done_ = true;
    return false;
  }
  idx_.assign(idx_.size() + 1, 0);
  return true;
}

Schedule ScheduleEnumerator::schedule() const {
  Schedule sc;
  sc.reserve(idx_.size());
  for (std::size_t i : idx_) sc.push_back(a_.element(i));
  return sc;
}

std::vector<Schedule> enumerate_schedules(const Alphabet& a, std::size_t depth) {
  std::vector<Schedule> out;
  ScheduleEnumerator e(a, depth);
  while (e.next()) out.push_back(e.schedule());
  return out;
}

const char* verdict_kind(const Verdict& v) {
  if (v.holds()) return "Holds";
  if (v.violated()) return "Violated";
  return "Inconclusive";
}

namespace {

/// Post state of one protocol step, without materialising the Step.
CState post_of(const ContractInstance& inst, const CState& pre, const ScheduleElement& el) {
  TransitionOutcome o = apply_transition(inst, pre.balance, pre.fields, el.msg, el.bstate);
  if (!o.out) return pre;
  return CState{pre.my_id, uint_monus(pre.balance + el.msg.val, o.out->val), std::move(o.fields)};
}

std::vector<ScheduleElement> elements_of(const Alphabet& a) {
  std::vector<ScheduleElement> els;
  els.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) els.push_back(a.element(i));
  return els;
}

std::size_t first_failing_step(const Trace& tr, const Predicate& I) {
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (!I.holds(tr[i].pre) || !I.holds(tr[i].post)) return i;
  return tr.size();
}

Violated safety_witness(const ContractInstance& inst, const Predicate& I, Schedule sc) {
  Violated w;
  w.trace = execute0(inst, sc);
  w.schedule = std::move(sc);
  w.failing_index = first_failing_step(w.trace, I);
  const Step& s = w.trace[w.failing_index];
  w.detail = std::string("predicate fails on the ") + (I.holds(s.pre) ? "post" : "pre") +
             " state of step " + std::to_string(w.failing_index);
  return w;
}

bool lex_better(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

class SafetyDfs {
 public:
  SafetyDfs(const ContractInstance& inst, const Predicate& I,
            const std::vector<ScheduleElement>& els, std::size_t depth,
            std::atomic<std::size_t>& best_len)
      : inst_(inst), I_(I), els_(els), depth_(depth), best_len_(best_len) {}

  void run(std::size_t first, const CState& root) {
    path_.assign(1, first);
    visit(root);
  }

  std::uint64_t visited() const { return visited_; }
  const std::optional<std::vector<std::size_t>>& best() const { return best_; }

 private:
  void visit(const CState& pre) {
    const std::size_t len = path_.size();
    if (len > best_len_.load(std::memory_order_relaxed)) return;
    CState post = post_of(inst_, pre, els_[path_.back()]);
    ++visited_;
    if (!I_.holds(post)) {
      if (!best_ || lex_better(path_, *best_)) best_ = path_;
      std::size_t cur = best_len_.load();
      while (len < cur && !best_len_.compare_exchange_weak(cur, len)) {
      }
      return;
    }
    if (len == depth_) return;
    for (std::size_t j = 0; j < els_.size(); ++j) {
      path_.push_back(j);
      visit(post);
      path_.pop_back();
    }
  }

  const ContractInstance& inst_;
  const Predicate& I_;
  const std::vector<ScheduleElement>& els_;
  std::size_t depth_;
  std::atomic<std::size_t>& best_len_;
  std::vector<std::size_t> path_;
  std::optional<std::vector<std::size_t>> best_;
  std::uint64_t visited_ = 0;
};

}  // namespace

Verdict check_safe(const ContractInstance& inst, const Predicate& I, const Alphabet& a,
                   std::size_t depth, int jobs) {
  Verdict v{I.text(), "exhaustive", Bound{depth, a.size()}, Holds{}};
  if (!I.holds(inst.state0)) {
    v.result = safety_witness(inst, I, {});
    return v;
  }
  const std::vector<ScheduleElement> els = elements_of(a);
  const long n = depth == 0 ? 0 : static_cast<long>(els.size());

  std::atomic<std::size_t> best_len{std::numeric_limits<std::size_t>::max()};
  std::vector<std::optional<std::vector<std::size_t>>> found(static_cast<std::size_t>(n));
  std::uint64_t visited = 0;
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) reduction(+ : visited)
  for (long i = 0; i < n; ++i) {
    SafetyDfs dfs(inst, I, els, depth, best_len);
    dfs.run(static_cast<std::size_t>(i), inst.state0);
    visited += dfs.visited();
    found[static_cast<std::size_t>(i)] = dfs.best();
  }

  std::optional<std::vector<std::size_t>> best;
  for (const auto& f : found)
    if (f && (!best || lex_better(*f, *best))) best = f;

  if (best) {
    Schedule sc;
    for (std::size_t i : *best) sc.push_back(els[i]);
    v.result = safety_witness(inst, I, std::move(sc));
  } else {
    Holds h;
    h.schedules_checked = Uint(visited) + 1;
    h.states_explored = visited + 1;
    v.result = h;
  }
  return v;
}

Verdict check_safe_reference(const ContractInstance& inst, const Predicate& I,
                             const Alphabet& a, std::size_t depth) {
  Verdict v{I.text(), "exhaustive", Bound{depth, a.size()}, Holds{}};
  ScheduleEnumerator e(a, depth);
  Uint count = 0;
  while (e.next()) {
    Schedule sc = e.schedule();
    Trace tr = execute0(inst, sc);
    ++count;
    if (first_failing_step(tr, I) < tr.size()) {
      v.result = safety_witness(inst, I, std::move(sc));
      return v;
    }
  }
  Holds h;
  h.schedules_checked = count;
  h.states_explored = count.convert_to<std::uint64_t>();
  v.result = h;
  return v;
}

StateGenerator random_state_generator(const ContractInstance& inst, const Alphabet& a) {
  std::vector<Address> addrs;
  auto add = [&](const Address& x) {
    if (std::find(addrs.begin(), addrs.end(), x) == addrs.end()) addrs.push_back(x);
  };
  for (const auto& m : a.messages) {
    add(m.sender);
    add(m.to);
  }
  for (const auto& [name, v] : inst.params.entries())
    if (v.is_address()) add(v.as_address());
  add(inst.state0.my_id);

  std::vector<std::string> strings{""};
  for (const auto& m : a.messages)
    if (std::find(strings.begin(), strings.end(), m.method.text()) == strings.end())
      strings.push_back(m.method.text());

  std::uint64_t bound = 100;
  if (const Value* goal = inst.params.find("goal"); goal != nullptr && goal->is_uint()) {
    const Uint twice = goal->as_uint() * 2;
    bound = twice > std::numeric_limits<std::uint64_t>::max()
                ? std::numeric_limits<std::uint64_t>::max()
                : twice.convert_to<std::uint64_t>();
  }

  const CState proto = inst.state0;
  return [proto, addrs, strings, bound](std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> amount(0, bound);
    std::uniform_int_distribution<std::size_t> pick_addr(0, addrs.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_str(0, strings.size() - 1);
    std::bernoulli_distribution coin(0.5);

    CState s = proto;
    s.balance = Uint(amount(rng));
    std::vector<Store::Entry> fields;
    for (const auto& [name, old] : proto.fields.entries()) {
      Value v;
      switch (old.type()) {
        case Type::Uint: v = Value(Uint(amount(rng))); break;
        case Type::Bool: v = Value(coin(rng)); break;
        case Type::Address: v = Value(addrs[pick_addr(rng)]); break;
        case Type::String: v = Value(strings[pick_str(rng)]); break;
        case Type::Map: {
          std::vector<Address> keys = addrs;
          std::shuffle(keys.begin(), keys.end(), rng);
          std::uniform_int_distribution<std::size_t> size(0, keys.size());
          keys.resize(size(rng));
          std::vector<MapValue::Entry> entries;
          for (auto& k : keys) entries.emplace_back(std::move(k), Uint(amount(rng)));
          v = Value(MapValue(std::move(entries)));
          break;
        }
        case Type::Payload: v = old; break;
      }
      fields.emplace_back(name, std::move(v));
    }
    s.fields = Store(std::move(fields));
    return s;
  };
}

Verdict check_safe_inductive(const ContractInstance& inst, const Predicate& I,
                             const StateGenerator& gen, const Alphabet& a,
                             std::uint64_t samples, std::uint64_t seed) {
  Verdict v{I.text(), "inductive", Bound{1, a.size(), 0, samples, seed}, Holds{}};
  if (!I.holds(inst.state0)) {
    Violated w = safety_witness(inst, I, {});
    w.detail = "base case: predicate fails on the initial state";
    v.result = std::move(w);
    return v;
  }
  const std::vector<ScheduleElement> els = elements_of(a);
  std::mt19937_64 rng(seed);
  const std::uint64_t cap = 1000 * std::max<std::uint64_t>(samples, 1);
  std::uint64_t accepted = 0;
  std::uint64_t attempts = 0;
  while (accepted < samples) {
    if (attempts >= cap) {
      std::ostringstream why;
      why << "GeneratorExhausted: " << accepted << " of " << samples << " states satisfied the "
          << "predicate after " << attempts << " draws";
      v.result = Inconclusive{why.str()};
      return v;
    }
    ++attempts;
    CState pre = gen(rng);
    if (!I.holds(pre)) continue;
    ++accepted;
    for (const auto& el : els) {
      Step st = step_prot(inst, pre, el.bstate, el.msg);
      if (!I.holds(st.post)) {
        Violated w;
        w.schedule = {el};
        w.trace = {st};
        w.failing_index = 0;
        w.start = pre;
        w.detail = "induction step: predicate holds before the step but not after it";
        v.result = std::move(w);
        return v;
      }
    }
  }
  Holds h;
  h.schedules_checked = Uint(accepted) * els.size();
  h.premise_states = accepted;
  h.states_explored = attempts;
  v.result = h;
  return v;
}

bool reachable(const ContractInstance& inst, const CState& st, const CState& st2,
               const Schedule& sc) {
  if (sc.empty()) return st == st2;
  return execute(inst, st, sc).back().post == st2;
}

namespace {

/// Breadth-first exploration of distinct states, remembering one shortest,
/// lexicographically least path to each.
class StateGraph {
 public:
  struct Node {
    CState state;
    std::size_t parent;
    std::size_t element;
    std::size_t depth;
  };

  StateGraph(const ContractInstance& inst, const std::vector<ScheduleElement>& els,
             const std::vector<std::size_t>& allowed, const CState& root, std::size_t depth) {
    nodes_.push_back(Node{root, npos, npos, 0});
    index_.emplace(root, 0);
    for (std::size_t head = 0; head < nodes_.size(); ++head) {
      if (nodes_[head].depth == depth) continue;
      for (std::size_t e : allowed) {
        CState next = post_of(inst, nodes_[head].state, els[e]);
        if (index_.count(next)) continue;
        index_.emplace(next, nodes_.size());
        nodes_.push_back(Node{std::move(next), head, e, nodes_[head].depth + 1});
      }
    }
  }

  const std::vector<Node>& nodes() const { return nodes_; }

  Schedule path_to(std::size_t i, const std::vector<ScheduleElement>& els) const {
    Schedule sc;
    for (; nodes_[i].parent != npos; i = nodes_[i].parent) sc.push_back(els[nodes_[i].element]);
    std::reverse(sc.begin(), sc.end());
    return sc;
  }

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

 private:
  std::vector<Node> nodes_;
  std::map<CState, std::size_t> index_;
};

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

Verdict check_since_as_long(const ContractInstance& inst, const Predicate& p,
                            const Predicate& q, const Predicate& r, const Alphabet& a,
                            std::size_t reach_depth, std::size_t cont_depth) {
  Verdict v{"since_as_long(" + p.text() + "; " + q.text() + "; " + r.text() + ")",
            "exhaustive", Bound{reach_depth, a.size(), cont_depth}, Holds{}};
  const std::vector<ScheduleElement> els = elements_of(a);
  std::vector<std::size_t> allowed;
  for (std::size_t i = 0; i < els.size(); ++i)
    if (r.holds(els[i])) allowed.push_back(i);

  const StateGraph reach(inst, els, all_indices(els.size()), inst.state0, reach_depth);
  Holds h;
  h.states_explored = reach.nodes().size();
  for (std::size_t i = 0; i < reach.nodes().size(); ++i) {
    const CState& st = reach.nodes()[i].state;
    if (!p.holds(st)) continue;
    ++h.premise_states;
    const StateGraph cont(inst, els, allowed, st, cont_depth);
    h.states_explored += cont.nodes().size();
    for (std::size_t j = 0; j < cont.nodes().size(); ++j) {
      if (q.holds(st, cont.nodes()[j].state)) continue;
      Violated w;
      w.schedule = reach.path_to(i, els);
      w.continuation_from = w.schedule.size();
      for (auto& el : cont.path_to(j, els)) w.schedule.push_back(std::move(el));
      w.trace = execute0(inst, w.schedule);
      w.failing_index = w.trace.size() - 1;
      w.detail = "relation fails between the state after " + std::to_string(w.continuation_from) +
                 " steps and the state after " + std::to_string(w.schedule.size()) + " steps";
      v.result = std::move(w);
      return v;
    }
  }
  h.schedules_checked =
      h.premise_states == 0
          ? schedule_count(els.size(), reach_depth)
          : schedule_count(els.size(), reach_depth) * schedule_count(allowed.size(), cont_depth);
  v.result = h;
  return v;
}

namespace {

bool is_refund(const std::optional<Message>& out, const Address& id, const Address& b,
               const Uint& d) {
  return out && out->val == d && out->sender == id && out->to == b &&
         out->method.text() == kDefaultTag && std::holds_alternative<OkMsg>(out->body);
}

}  // namespace

Verdict check_can_claim_back(const ContractInstance& inst, const Address& b, const Uint& d,
                             const Alphabet& a, std::size_t depth) {
  std::ostringstream name;
  name << "can_claim_back(" << b.id << ", " << d << ")";
  Verdict v{name.str(), "exhaustive", Bound{depth, a.size()}, Holds{}};

  const PredicateArgs args{{"b", Value(b)}, {"d", Value(d)}};
  const Predicate premise(builtin_formula("donated", args) + " && !funded && balance < goal",
                          PredicateKind::State, inst);
  const Predicate late("max_block < block_num", PredicateKind::Element, inst);

  const std::vector<ScheduleElement> els = elements_of(a);
  const StateGraph reach(inst, els, all_indices(els.size()), inst.state0, depth);
  Holds h;
  h.states_explored = reach.nodes().size();
  for (std::size_t i = 0; i < reach.nodes().size(); ++i) {
    const CState& st = reach.nodes()[i].state;
    if (!premise.holds(st)) continue;
    for (const BState& bc : a.bstates) {
      if (!late.holds(ScheduleElement{bc, Message{}})) continue;
      ++h.premise_states;
      bool witnessed = false;
      for (const Message& m : a.messages) {
        if (m.sender != b) continue;
        TransitionOutcome o = apply_transition(inst, st.balance, st.fields, m, bc);
        if (is_refund(o.out, st.my_id, b, d)) {
          witnessed = true;
          break;
        }
      }
      if (witnessed) continue;
      Violated w;
      w.schedule = reach.path_to(i, els);
      w.trace = execute0(inst, w.schedule);
      w.failing_index = w.trace.size() - 1;
      w.at_block = bc;
      std::ostringstream why;
      why << "no message from " << b.id << " in the alphabet refunds " << d << " at block "
          << bc.block_num;
      w.detail = why.str();
      v.result = std::move(w);
      return v;
    }
  }
  h.schedules_checked = schedule_count(els.size(), depth);
  v.result = h;
  return v;
}

}  // namespace scilla
