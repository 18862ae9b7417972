// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "crowdfunding_oracle.hpp"
#include "scilla/checks.hpp"
#include "scilla/json_io.hpp"
#include "scilla/network.hpp"
#include "scilla/parser.hpp"
#include "scilla/propcheck.hpp"
#include "support.hpp"

using namespace scilla;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool witness_replays(const ContractInstance& inst, const Predicate& I, const Violated& w) {
  const Trace t = execute0(inst, w.schedule);
  if (t != w.trace || w.failing_index >= t.size()) return false;
  const Step& s = t[w.failing_index];
  return !(I.holds(s.pre) && I.holds(s.post));
}

Outcome corpus_round_trip() {
  const auto t0 = Clock::now();
  const ContractDef c = parse_contract(read_text(corpus_path("crowdfunding.scilla")));
  const ContractDef back = parse_contract(pretty_print(c));
  const CheckReport r = check_all(c);
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "round-trip " << (back == c ? "equal" : "DIFFERENT") << ", " << r.diagnostics.size()
    << " diagnostics, " << secs << " s";
  return {back == c && r.empty() && secs < 1.0, d.str()};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  const auto inst = crowdfunding();
  const Alphabet a = canonical_alphabet();
  const oracle::CState s0 = oracle_state0();
  ScheduleEnumerator en(a, 3);
  std::uint64_t schedules = 0, divergences = 0;
  while (en.next()) {
    const Schedule sc = en.schedule();
    if (execute0(inst, sc) != oracle::to_trace(oracle::execute0(s0, sc))) ++divergences;
    ++schedules;
  }
  const double secs = seconds_since(t0);
  const bool count_ok = Uint(schedules) == schedule_count(a.size(), 3);
  std::ostringstream d;
  d << schedules << " schedules (closed form " << schedule_count(a.size(), 3) << "), "
    << divergences << " divergences, " << secs << " s";
  return {count_ok && divergences == 0 && secs < 60.0, d.str()};
}

Outcome balance_backed_safe() {
  const auto t0 = Clock::now();
  const auto inst = crowdfunding();
  const Alphabet a = canonical_alphabet();
  const Verdict v = check_safe(inst, make_builtin("balance_backed", {}, inst), a, 4);
  const auto mutant = crowdfunding("crowdfunding_claim_mutant.scilla");
  const Predicate mI = make_builtin("balance_backed", {}, mutant);
  const Verdict m = check_safe(mutant, mI, a, 4);
  const double secs = seconds_since(t0);
  const bool mutant_ok = m.violated() && m.as_violated().schedule.size() <= 4 &&
                         witness_replays(mutant, mI, m.as_violated());
  std::ostringstream d;
  d << "depth 4 over " << a.size() << " elements: " << verdict_kind(v);
  if (v.holds()) d << " (" << v.as_holds().schedules_checked << " schedules)";
  d << "; mutant " << verdict_kind(m);
  if (m.violated()) d << " with a " << m.as_violated().schedule.size() << "-element witness";
  d << ", " << secs << " s";
  return {v.holds() && mutant_ok && secs < 600.0, d.str()};
}

Outcome donation_preserved() {
  const auto inst = crowdfunding();
  const Alphabet a = canonical_alphabet();
  const PredicateArgs args{{"b", Value::address("A1")}, {"d", Value::uint(5)}};
  const Predicate p = make_builtin("donated", args, inst);
  const Predicate q = make_builtin("donation_kept", args, inst);
  const Verdict guarded =
      check_since_as_long(inst, p, q, make_builtin("no_claims_from", args, inst), a, 3, 3);
  const Verdict open =
      check_since_as_long(inst, p, q, Predicate("true", PredicateKind::Element, inst), a, 3, 3);
  std::ostringstream d;
  d << "no claims from A1: " << verdict_kind(guarded);
  if (guarded.holds()) d << " (" << guarded.as_holds().premise_states << " premise states)";
  d << "; unrestricted: " << verdict_kind(open);
  return {guarded.holds() && guarded.as_holds().premise_states > 0 && open.violated(), d.str()};
}

Outcome can_claim_back() {
  const auto inst = crowdfunding();
  const Verdict v = check_can_claim_back(inst, Address{"A1"}, 5, canonical_alphabet(), 4);
  const Alphabet no_claims = alphabet_from_json(
      parse_json_text(read_text(corpus_path("astar_no_claims.json"))));
  const Verdict w = check_can_claim_back(inst, Address{"A1"}, 5, no_claims, 4);
  std::ostringstream d;
  d << "full alphabet: " << verdict_kind(v);
  if (v.holds()) d << " (" << v.as_holds().premise_states << " premise states)";
  d << "; without claims: " << verdict_kind(w);
  return {v.holds() && v.as_holds().premise_states >= 1 && w.violated(), d.str()};
}

Outcome balance_law() {
  const auto inst = crowdfunding();
  std::mt19937_64 rng(20180101);
  const char* addrs[] = {"A0", "A1", "A2", "A3"};
  const char* tags[] = {"donate", "getfunds", "claim", "other"};
  std::uniform_int_distribution<int> addr(0, 3), tag(0, 3), coin(0, 1), block(0, 14);
  std::uniform_int_distribution<unsigned> amount(0, 250);
  int failures = 0, with_out = 0;
  for (int i = 0; i < 10000; ++i) {
    std::vector<MapValue::Entry> entries;
    for (int k = 0; k < 4; ++k)
      if (coin(rng)) entries.emplace_back(Address{addrs[k]}, Uint(amount(rng)));
    std::shuffle(entries.begin(), entries.end(), rng);
    const CState pre{Address{"C"}, Uint(amount(rng)),
                     Store({{"backers", Value(MapValue(std::move(entries)))},
                            {"funded", Value(coin(rng) == 1)}})};
    const BState bc{Uint(block(rng))};
    const Message m = msg(coin(rng) ? amount(rng) : 0, addrs[addr(rng)], tags[tag(rng)]);
    const Step s = step_prot(inst, pre, bc, m);
    bool ok;
    if (s.out) {
      ++with_out;
      ok = s.post.balance == uint_monus(pre.balance + m.val, s.out->val);
    } else {
      ok = s.post.balance == pre.balance && s.post.fields == pre.fields;
    }
    if (!ok) ++failures;
  }
  std::ostringstream d;
  d << "10000 triples, " << with_out << " with output, " << failures << " failures";
  return {failures == 0, d.str()};
}

Outcome enumeration_count() {
  std::mt19937_64 rng(20180101);
  std::uniform_int_distribution<std::size_t> blocks(1, 3), msgs(1, 5), depth(0, 4);
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    Alphabet a;
    for (std::size_t b = 0, n = blocks(rng); b < n; ++b) a.bstates.push_back(BState{Uint(b)});
    for (std::size_t k = 0, n = msgs(rng); k < n; ++k)
      a.messages.push_back(msg(static_cast<unsigned>(k), "A1", "donate"));
    const std::size_t d = depth(rng);
    Uint closed = 0;
    for (std::size_t k = 0; k <= d; ++k)
      closed += boost::multiprecision::pow(Uint(a.size()), static_cast<unsigned>(k));
    ScheduleEnumerator en(a, d);
    Uint n = 0;
    while (en.next()) ++n;
    if (n != closed) ++mismatches;
  }
  return {mismatches == 0, "20 parameter pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome network() {
  NetworkState net;
  net.deploy(instantiate(load_corpus("caller.scilla"), Address{"K"}, 0,
                         Store({{"owner", Value::address("A0")}, {"server", Value::address("S")}})));
  net.deploy(instantiate(load_corpus("server.scilla"), Address{"S"}, 0, Store{}));
  const NetworkResult r = run_network(
      net, Message{7, Address{"A0"}, Address{"K"}, Tag("ClientTransition"), TextPayload{""}}, 10);
  const bool delivered = r.status == NetworkStatus::Completed && r.deliveries.size() == 1 &&
                         r.deliveries[0].to == Address{"A0"} &&
                         r.deliveries[0].body == Payload(AmountPayload{7}) && !r.steps.empty() &&
                         r.steps.back().continuation == "UseResult";

  NetworkState loop;
  loop.deploy(instantiate(load_corpus("looper.scilla"), Address{"L"}, 0,
                          Store({{"self", Value::address("L")}})));
  const NetworkResult l = run_network(
      loop, Message{0, Address{"A0"}, Address{"L"}, Tag("Ping"), TextPayload{""}}, 5);
  const bool halted = l.status == NetworkStatus::BudgetExhausted && l.steps.size() == 5;

  std::ostringstream d;
  d << "caller/server " << network_status_name(r.status) << " with " << r.deliveries.size()
    << " delivery; looper " << network_status_name(l.status) << " after " << l.steps.size()
    << " steps";
  return {delivered && halted, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"corpus round-trip and static checks", corpus_round_trip},
      {"interpreter/oracle equivalence up to depth 3", oracle_equivalence},
      {"balance_backed safety and claim mutant", balance_backed_safe},
      {"donation preserved since donation", donation_preserved},
      {"backer can claim back", can_claim_back},
      {"balance and exception laws", balance_law},
      {"schedule enumeration count", enumeration_count},
      {"network continuations and budget", network},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
