#include <gtest/gtest.h>

#include <random>

#include "crowdfunding_oracle.hpp"
#include "scilla/json_io.hpp"
#include "scilla/runtime.hpp"
#include "support.hpp"

using namespace scilla;
using testing_support::at;
using testing_support::crowdfunding;
using testing_support::msg;

namespace {

Store fields(MapValue backers, bool funded) {
  return Store({{"backers", Value(std::move(backers))}, {"funded", Value(funded)}});
}

MapValue backers(std::vector<std::pair<std::string, unsigned>> entries) {
  std::vector<MapValue::Entry> out;
  for (auto& [a, v] : entries) out.emplace_back(Address{a}, Uint(v));
  return MapValue(std::move(out));
}

Message reply(unsigned val, const std::string& to, Payload body) {
  return Message{Uint(val), Address{"C"}, Address{to}, Tag(kDefaultTag), std::move(body)};
}

void expect_chained(const Trace& t) {
  for (std::size_t i = 1; i < t.size(); ++i) ASSERT_EQ(t[i - 1].post, t[i].pre) << "step " << i;
}

}  // namespace

TEST(Instantiate, Crowdfunding) {
  const auto inst = crowdfunding();
  EXPECT_EQ(inst.state0.my_id, Address{"C"});
  EXPECT_EQ(inst.state0.balance, 0);
  EXPECT_EQ(inst.state0.fields, fields(MapValue{}, false));
  EXPECT_EQ(inst.params.at("goal"), Value::uint(100));
}

TEST(Instantiate, InitialBalance) {
  EXPECT_EQ(crowdfunding("crowdfunding.scilla", 50).state0.balance, 50);
}

TEST(Instantiate, ParamErrors) {
  const auto def = testing_support::load_corpus("crowdfunding.scilla");
  auto kind = [&](const Store& params) {
    try {
      instantiate(def, Address{"C"}, 0, params);
    } catch (const InstantiationError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "instantiated";
    return InstantiationErrorKind::BadInitializer;
  };
  EXPECT_EQ(kind(Store({{"owner", Value::address("A0")}, {"max_block", Value::uint(10)}})),
            InstantiationErrorKind::MissingParam);
  EXPECT_EQ(kind(Store({{"owner", Value::address("A0")},
                        {"max_block", Value(true)},
                        {"goal", Value::uint(1)}})),
            InstantiationErrorKind::ParamTypeMismatch);
  EXPECT_EQ(kind(Store({{"owner", Value::address("A0")},
                        {"max_block", Value::uint(10)},
                        {"goal", Value::uint(1)},
                        {"extra", Value::uint(1)}})),
            InstantiationErrorKind::UnknownParam);
}

TEST(ApplyTransition, DonateBeforeDeadline) {
  const auto inst = crowdfunding();
  const auto o = apply_transition(inst, 0, inst.state0.fields, msg(5, "A1", "donate"), BState{3});
  EXPECT_EQ(o.fields, fields(backers({{"A1", 5}}), false));
  ASSERT_TRUE(o.out);
  EXPECT_EQ(*o.out, reply(0, "A1", OkMsg{}));
}

TEST(ApplyTransition, DonateAtDeadline) {
  const auto inst = crowdfunding();
  const auto o = apply_transition(inst, 0, inst.state0.fields, msg(5, "A1", "donate"), BState{10});
  EXPECT_EQ(o.fields, inst.state0.fields);
  ASSERT_TRUE(o.out);
  EXPECT_EQ(*o.out, reply(0, "A1", NoMsg{}));
}

TEST(ApplyTransition, UnknownTag) {
  const auto inst = crowdfunding();
  const auto o = apply_transition(inst, 0, inst.state0.fields, msg(5, "A1", "unknown"), BState{3});
  EXPECT_EQ(o.fields, inst.state0.fields);
  EXPECT_FALSE(o.out);
  EXPECT_FALSE(o.error);
}

TEST(ApplyTransition, DispatchIgnoresCaseFilterDoesNot) {
  const auto inst = crowdfunding();
  const auto o = apply_transition(inst, 0, inst.state0.fields, msg(5, "A1", "Donate"), BState{3});
  EXPECT_FALSE(o.out);
}

TEST(ApplyTransition, RuntimeErrorIsAnException) {
  // Claim from someone who never donated: `get` on an absent key.
  const auto inst = crowdfunding();
  const auto o = apply_transition(inst, 0, inst.state0.fields, msg(0, "A2", "claim"), BState{11});
  EXPECT_FALSE(o.out);
  ASSERT_TRUE(o.error);
  EXPECT_EQ(*o.error, EvalErrorKind::MapKeyAbsent);
  EXPECT_EQ(o.fields, inst.state0.fields);
}

TEST(StepProt, DonateAddsValue) {
  const auto inst = crowdfunding();
  const Step s = step_prot(inst, inst.state0, BState{3}, msg(5, "A1", "donate"));
  EXPECT_EQ(s.post.balance, 5);
  EXPECT_EQ(s.pre, inst.state0);
}

TEST(StepProt, ClaimRefund) {
  const auto inst = crowdfunding();
  const CState pre{Address{"C"}, 5, fields(backers({{"A1", 5}}), false)};
  const Step s = step_prot(inst, pre, BState{11}, msg(0, "A1", "claim"));
  EXPECT_EQ(s.post.fields, fields(MapValue{}, false));
  EXPECT_EQ(s.post.balance, 0);
  ASSERT_TRUE(s.out);
  EXPECT_EQ(s.out->val, 5);
  EXPECT_EQ(s.out->to, Address{"A1"});
}

TEST(StepProt, UnmatchedTagKeepsBalance) {
  const auto inst = crowdfunding();
  const Step s = step_prot(inst, inst.state0, BState{3}, msg(7, "A1", "nothing"));
  EXPECT_EQ(s.post, s.pre);
  EXPECT_FALSE(s.out);
}

TEST(Execute, EmptySchedule) {
  const auto inst = crowdfunding();
  EXPECT_TRUE(execute(inst, inst.state0, {}).empty());
}

TEST(Execute, SingleElementUnfoldsOnce) {
  const auto inst = crowdfunding();
  const Trace t = execute(inst, inst.state0, {at(2, msg(5, "A1", "donate"))});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], step_prot(inst, inst.state0, BState{2}, msg(5, "A1", "donate")));
}

TEST(Execute, TwoDonationsConsOrder) {
  const auto inst = crowdfunding();
  const Trace t = execute(inst, inst.state0,
                          {at(1, msg(5, "A1", "donate")), at(2, msg(7, "A2", "donate"))});
  ASSERT_EQ(t.size(), 2u);
  expect_chained(t);
  EXPECT_EQ(t[1].post.fields, fields(backers({{"A2", 7}, {"A1", 5}}), false));
  EXPECT_EQ(t[1].post.balance, 12);
}

TEST(Execute0, EmptyScheduleIsIdentityStep) {
  const auto inst = crowdfunding();
  const Trace t = execute0(inst, {});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (Step{inst.state0, inst.state0, std::nullopt}));
}

TEST(Execute0, Singleton) {
  const auto inst = crowdfunding();
  const Trace t = execute0(inst, {at(1, msg(5, "A1", "donate"))});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].pre, inst.state0);
}

TEST(Execute0, GoldenTraceMatchesOracleAndFixture) {
  const auto inst = crowdfunding();
  const Trace t = execute0(inst, testing_support::golden_schedule());
  const Trace expected = oracle::to_trace(
      oracle::execute0(testing_support::oracle_state0(), testing_support::golden_schedule()));
  EXPECT_EQ(t, expected);
  const Json frozen = parse_json_text(
      testing_support::read_text(testing_support::tests_path("golden/trace4.json")));
  EXPECT_EQ(trace_from_json(frozen), t);
}

TEST(Execute, TraceLengthAndChaining) {
  const auto inst = crowdfunding();
  const Alphabet a = canonical_alphabet();
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::size_t> pick(0, a.size() - 1), len(0, 8);
  for (int i = 0; i < 300; ++i) {
    Schedule sc;
    for (std::size_t k = 0, n = len(rng); k < n; ++k) sc.push_back(a.element(pick(rng)));
    const Trace t = execute(inst, inst.state0, sc);
    ASSERT_EQ(t.size(), sc.size());
    expect_chained(t);
    for (const auto& s : t) ASSERT_EQ(s.pre.my_id, s.post.my_id);
    EXPECT_EQ(execute(inst, inst.state0, sc), t);
  }
}

namespace {

// Random pre-state / block / message triples over the crowdfunding fields.
struct Triple {
  CState pre;
  BState bc;
  Message m;
};

Triple random_triple(std::mt19937_64& rng) {
  const char* addrs[] = {"A0", "A1", "A2", "A3"};
  const char* tags[] = {"donate", "getfunds", "claim", "Claim", "other"};
  std::uniform_int_distribution<int> addr(0, 3), tag(0, 4), coin(0, 1), block(0, 14);
  std::uniform_int_distribution<unsigned> amount(0, 250);
  std::vector<MapValue::Entry> entries;
  std::vector<int> used(4, 0);
  for (int i = 0, n = addr(rng); i < n; ++i) {
    const int k = addr(rng);
    if (used[k]++) continue;
    entries.emplace_back(Address{addrs[k]}, Uint(amount(rng)));
  }
  CState pre{Address{"C"}, Uint(amount(rng)), fields(MapValue(std::move(entries)), coin(rng) == 1)};
  return Triple{pre, BState{Uint(block(rng))}, msg(amount(rng) % 3 == 0 ? 0 : amount(rng),
                                                  addrs[addr(rng)], tags[tag(rng)])};
}

}  // namespace

TEST(StepProt, BalanceAndExceptionLaws) {
  const auto inst = crowdfunding();
  std::mt19937_64 rng(6);
  int with_out = 0;
  for (int i = 0; i < 10000; ++i) {
    const Triple t = random_triple(rng);
    const Step s = step_prot(inst, t.pre, t.bc, t.m);
    if (s.out) {
      ++with_out;
      ASSERT_EQ(s.post.balance, uint_monus(t.pre.balance + t.m.val, s.out->val));
    } else {
      ASSERT_EQ(s.post.balance, t.pre.balance);
      ASSERT_EQ(s.post.fields, t.pre.fields);
    }
    ASSERT_EQ(s.post.my_id, s.pre.my_id);
  }
  EXPECT_GT(with_out, 1000);
}

TEST(StepProt, AgreesWithOracleOnRandomStates) {
  const auto inst = crowdfunding();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 5000; ++i) {
    const Triple t = random_triple(rng);
    oracle::CState pre{t.pre.my_id, t.pre.balance,
                       oracle::State{Address{"A0"}, 10, 100, {}, t.pre.fields.at("funded").as_bool()}};
    for (const auto& e : t.pre.fields.at("backers").as_map().entries()) pre.s.backers.push_back(e);
    const oracle::Step expected = oracle::step_prot(pre, t.bc.block_num, t.m);
    const Step got = step_prot(inst, t.pre, t.bc, t.m);
    ASSERT_EQ(got.post, oracle::to_cstate(expected.post));
    ASSERT_EQ(got.out, expected.out);
  }
}

TEST(Execute0, OracleEquivalenceUpToDepthTwo) {
  const auto inst = crowdfunding();
  const Alphabet a = canonical_alphabet();
  ScheduleEnumerator en(a, 2);
  std::size_t n = 0;
  while (en.next()) {
    const Schedule sc = en.schedule();
    ASSERT_EQ(execute0(inst, sc),
              oracle::to_trace(oracle::execute0(testing_support::oracle_state0(), sc)));
    ++n;
  }
  EXPECT_EQ(n, 1u + 54u + 54u * 54u);
}

TEST(Lints, Overdraw) {
  const CState s0{Address{"C"}, 0, Store{}};
  const Message in = msg(0, "A1", "x");
  const Step truncated{s0, s0, reply(5, "A1", NoMsg{})};
  const auto w = overdraw_lint(truncated, in);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->severity, Severity::Warning);
  EXPECT_EQ(w->rule_id, kLintOverdraw);

  const CState s5{Address{"C"}, 5, Store{}};
  EXPECT_FALSE(overdraw_lint(Step{s5, s0, reply(5, "A1", OkMsg{})}, in));
  EXPECT_FALSE(overdraw_lint(Step{s0, s0, std::nullopt}, in));
}

TEST(Lints, AbsorbedFunds) {
  const auto inst = crowdfunding();
  const Message late = msg(5, "A1", "donate");
  const Step s = step_prot(inst, inst.state0, BState{11}, late);
  EXPECT_EQ(s.post.balance, 5);
  const auto note = absorbed_funds_note(s, late);
  ASSERT_TRUE(note);
  EXPECT_EQ(note->severity, Severity::Note);
  EXPECT_EQ(note->rule_id, kLintAbsorbedFunds);

  const Step accepted = step_prot(inst, inst.state0, BState{1}, late);
  EXPECT_FALSE(absorbed_funds_note(accepted, late));
}
