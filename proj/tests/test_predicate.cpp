#include <gtest/gtest.h>

#include "scilla/lexer.hpp"
#include "scilla/predicate.hpp"
#include "support.hpp"

using namespace scilla;
using testing_support::crowdfunding;

namespace {

CState state(std::vector<std::pair<std::string, unsigned>> bs, bool funded, unsigned bal) {
  std::vector<MapValue::Entry> entries;
  for (auto& [a, v] : bs) entries.emplace_back(Address{a}, Uint(v));
  return CState{Address{"C"}, Uint(bal),
                Store({{"backers", Value(MapValue(std::move(entries)))}, {"funded", Value(funded)}})};
}

PredicateArgs donation(const std::string& b, unsigned d) {
  return {{"b", Value::address(b)}, {"d", Value::uint(d)}};
}

}  // namespace

TEST(Builtins, BalanceBacked) {
  const auto inst = crowdfunding();
  const Predicate p = make_builtin("balance_backed", {}, inst);
  EXPECT_TRUE(p.holds(state({{"A1", 5}}, false, 5)));
  EXPECT_FALSE(p.holds(state({{"A1", 5}, {"A2", 1}}, false, 5)));
  EXPECT_TRUE(p.holds(state({{"A1", 500}}, true, 0)));
}

TEST(Builtins, Donated) {
  const auto inst = crowdfunding();
  const Predicate p = make_builtin("donated", donation("A1", 5), inst);
  EXPECT_TRUE(p.holds(state({{"A1", 5}}, false, 0)));
  EXPECT_FALSE(p.holds(state({{"A1", 6}}, false, 0)));
  EXPECT_FALSE(p.holds(state({}, false, 0)));
}

TEST(Builtins, DonationKeptAndNoClaims) {
  const auto inst = crowdfunding();
  const Predicate kept = make_builtin("donation_kept", donation("A1", 5), inst);
  EXPECT_EQ(kept.kind(), PredicateKind::Pair);
  EXPECT_TRUE(kept.holds(state({}, false, 0), state({{"A1", 5}}, false, 0)));
  EXPECT_FALSE(kept.holds(state({{"A1", 5}}, false, 0), state({}, false, 0)));

  const Predicate r = make_builtin("no_claims_from", {{"b", Value::address("A1")}}, inst);
  EXPECT_EQ(r.kind(), PredicateKind::Element);
  EXPECT_FALSE(r.holds(testing_support::at(11, testing_support::msg(0, "A1", "claim"))));
  EXPECT_TRUE(r.holds(testing_support::at(11, testing_support::msg(0, "A2", "claim"))));
}

TEST(Builtins, Registry) {
  std::vector<std::string> names;
  for (const auto& b : builtin_predicates()) names.push_back(b.name);
  for (const char* n : {"balance_backed", "donated", "no_claims_from"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_EQ(builtin_formula("donated", donation("A2", 7)), "has_entry(backers, \"A2\", 7)");
}

TEST(Builtins, Errors) {
  const auto inst = crowdfunding();
  EXPECT_THROW(make_builtin("no_such_predicate", {}, inst), UnknownPredicate);
  EXPECT_THROW(make_builtin("donated", {{"b", Value::address("A1")}}, inst), PredicateTypeError);
  EXPECT_THROW(make_builtin("donated", {{"b", Value::uint(1)}, {"d", Value::uint(1)}}, inst),
               PredicateTypeError);
}

TEST(Predicate, Tautology) {
  const auto inst = crowdfunding();
  const Predicate p("balance == balance", PredicateKind::State, inst);
  EXPECT_TRUE(p.holds(state({}, false, 0)));
  EXPECT_TRUE(p.holds(state({{"A2", 3}}, true, 99)));
}

TEST(Predicate, Operators) {
  const auto inst = crowdfunding();
  const CState s = state({{"A1", 5}, {"A2", 7}}, false, 20);
  auto eval = [&](const char* text) { return Predicate(text, PredicateKind::State, inst).holds(s); };
  EXPECT_TRUE(eval("sum_values(backers) == 12"));
  EXPECT_TRUE(eval("size(backers) == 2 && contains(backers, \"A2\")"));
  EXPECT_TRUE(eval("not funded"));
  EXPECT_TRUE(eval("!funded && balance - 30 == 0"));
  EXPECT_TRUE(eval("funded -> false"));
  EXPECT_TRUE(eval("false -> false -> true"));
  EXPECT_FALSE(eval("true -> false"));
  EXPECT_TRUE(eval("balance > 19 && balance >= 20 && balance != 21"));
  EXPECT_TRUE(eval("goal == 100 && max_block < goal && owner == \"A0\""));
  EXPECT_TRUE(eval("my_id == \"C\""));
  EXPECT_TRUE(eval("(1 + 2 == 3) || funded"));
}

TEST(Predicate, PairAndElementNames) {
  const auto inst = crowdfunding();
  const Predicate grew("size(post.backers) > size(pre.backers)", PredicateKind::Pair, inst);
  EXPECT_TRUE(grew.holds(state({}, false, 0), state({{"A1", 5}}, false, 5)));
  EXPECT_FALSE(grew.holds(state({{"A1", 5}}, false, 5), state({{"A1", 5}}, false, 5)));

  const Predicate late("block_num > max_block && tag == \"claim\" && val == 0 && to == \"C\"",
                       PredicateKind::Element, inst);
  EXPECT_TRUE(late.holds(testing_support::at(11, testing_support::msg(0, "A1", "claim"))));
  EXPECT_FALSE(late.holds(testing_support::at(10, testing_support::msg(0, "A1", "claim"))));
}

TEST(Predicate, TypeErrors) {
  const auto inst = crowdfunding();
  auto bad = [&](const char* text, PredicateKind k) {
    EXPECT_THROW(Predicate(text, k, inst), PredicateTypeError) << text;
  };
  bad("balance", PredicateKind::State);
  bad("funded + 1 == 2", PredicateKind::State);
  bad("nosuchfield", PredicateKind::State);
  bad("pre.funded", PredicateKind::State);
  bad("funded", PredicateKind::Pair);
  bad("sender == \"A1\"", PredicateKind::State);
  bad("backers", PredicateKind::Element);
  bad("sum_values(funded) == 0", PredicateKind::State);
  EXPECT_THROW(Predicate("balance ==", PredicateKind::State, inst), ParseError);
}

TEST(Predicate, KindMismatchAtEvaluation) {
  const auto inst = crowdfunding();
  const Predicate p("funded", PredicateKind::State, inst);
  EXPECT_THROW(p.holds(state({}, false, 0), state({}, false, 0)), PredicateTypeError);
  EXPECT_THROW(p.holds(testing_support::at(1, testing_support::msg(0, "A1", "x"))),
               PredicateTypeError);
}
