#include <gtest/gtest.h>

#include <random>

#include "scilla/errors.hpp"
#include "scilla/value.hpp"

using namespace scilla;

TEST(UintMonus, Examples) {
  EXPECT_EQ(uint_monus(7, 5), 2);
  EXPECT_EQ(uint_monus(5, 7), 0);
  EXPECT_EQ(uint_monus(0, 0), 0);
}

TEST(UintMonus, BeyondSixtyFourBits) {
  const Uint big = Uint(1) << 100;
  EXPECT_EQ(uint_monus(big + 3, big), 3);
  EXPECT_EQ(uint_monus(big, big + 1), 0);
}

TEST(UintMonus, MatchesDefinitionOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> d(0, 1000);
  for (int i = 0; i < 2000; ++i) {
    const Uint a = d(rng);
    const Uint b = d(rng);
    EXPECT_EQ(uint_monus(a, b), a >= b ? Uint(a - b) : Uint(0));
    EXPECT_GE(uint_monus(a, b), 0);
  }
}

TEST(Tag, RejectsEmptyText) {
  EXPECT_THROW(Tag(""), std::invalid_argument);
  EXPECT_EQ(Tag("donate").text(), "donate");
}

TEST(Tag, DispatchComparisonIgnoresCase) {
  EXPECT_TRUE(tags_match("Donate", "donate"));
  EXPECT_TRUE(tags_match("GETFUNDS", "GetFunds"));
  EXPECT_FALSE(tags_match("donate", "donates"));
  EXPECT_FALSE(tags_match("claim", "clam"));
}

TEST(MapValue, RejectsDuplicateKeys) {
  EXPECT_THROW(MapValue({{Address{"A1"}, 1}, {Address{"A1"}, 2}}), std::invalid_argument);
}

TEST(MapValue, PutConsesNewKeysAndReplacesExistingInPlace) {
  MapValue m;
  m = m.put(Address{"A1"}, 5);
  m = m.put(Address{"A2"}, 7);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.entries()[0].first.id, "A2");
  EXPECT_EQ(m.entries()[1].first.id, "A1");
  m = m.put(Address{"A1"}, 9);
  EXPECT_EQ(m.entries()[1], (MapValue::Entry{Address{"A1"}, 9}));
  EXPECT_EQ(m.size(), 2u);
}

TEST(MapValue, RemoveKeepsOrderOfRemainingEntries) {
  const MapValue m({{Address{"A1"}, 5}, {Address{"A2"}, 7}, {Address{"A3"}, 1}});
  const MapValue r = m.remove(Address{"A2"});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.entries()[0].first.id, "A1");
  EXPECT_EQ(r.entries()[1].first.id, "A3");
  EXPECT_EQ(m.remove(Address{"A9"}), m);
}

namespace {

MapValue random_map(std::mt19937_64& rng, const std::vector<Address>& pool) {
  std::uniform_int_distribution<std::size_t> n(0, pool.size());
  std::uniform_int_distribution<unsigned> v(0, 50);
  std::vector<Address> keys = pool;
  std::shuffle(keys.begin(), keys.end(), rng);
  keys.resize(n(rng));
  std::vector<MapValue::Entry> entries;
  for (auto& k : keys) entries.emplace_back(k, v(rng));
  return MapValue(std::move(entries));
}

}  // namespace

TEST(MapValue, PutGetContainsRemoveLaws) {
  std::mt19937_64 rng(11);
  const std::vector<Address> pool{{"A0"}, {"A1"}, {"A2"}, {"A3"}, {"B"}};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<unsigned> v(0, 1000);
  for (int i = 0; i < 3000; ++i) {
    const MapValue m = random_map(rng, pool);
    const Address& k = pool[pick(rng)];
    const Uint x = v(rng);
    const MapValue p = m.put(k, x);
    EXPECT_TRUE(p.contains(k));
    ASSERT_NE(p.find(k), nullptr);
    EXPECT_EQ(*p.find(k), x);
    EXPECT_FALSE(m.remove(k).contains(k));
    EXPECT_EQ(p.size(), m.contains(k) ? m.size() : m.size() + 1);
    // Keys stay unique.
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        EXPECT_NE(p.entries()[a].first, p.entries()[b].first);
  }
}

TEST(Value, AccessorsCheckTheAlternative) {
  const Value u = Value::uint(3);
  EXPECT_EQ(u.as_uint(), 3);
  EXPECT_EQ(u.type(), Type::Uint);
  try {
    (void)u.as_bool();
    FAIL() << "expected TypeMismatch";
  } catch (const EvalError& e) {
    EXPECT_EQ(e.kind(), EvalErrorKind::TypeMismatch);
  }
  EXPECT_NE(Value::address("A1"), Value::str("A1"));
  EXPECT_EQ(Value::address("A1"), Value(Address{"A1"}));
}
