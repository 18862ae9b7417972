#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "scilla/parser.hpp"
#include "scilla/propcheck.hpp"

namespace {

scilla::ContractInstance load(const char* name) {
  std::ifstream in(std::string(SCILLA_CORPUS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto def = std::make_shared<const scilla::ContractDef>(scilla::parse_contract(ss.str()));
  return scilla::instantiate(def, scilla::Address{"C"}, 0, scilla::canonical_params());
}

void BM_CheckSafe(benchmark::State& state) {
  const auto inst = load("crowdfunding.scilla");
  const scilla::Predicate I = scilla::make_builtin("balance_backed", {}, inst);
  const scilla::Alphabet a = scilla::canonical_alphabet();
  const auto depth = static_cast<std::size_t>(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) {
    const scilla::Verdict v = scilla::check_safe(inst, I, a, depth, jobs);
    benchmark::DoNotOptimize(v.holds());
  }
  state.counters["schedules"] =
      static_cast<double>(scilla::schedule_count(a.size(), depth).convert_to<std::uint64_t>());
}

void BM_CheckSafeReference(benchmark::State& state) {
  const auto inst = load("crowdfunding.scilla");
  const scilla::Predicate I = scilla::make_builtin("balance_backed", {}, inst);
  const scilla::Alphabet a = scilla::canonical_alphabet();
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    const scilla::Verdict v = scilla::check_safe_reference(inst, I, a, depth);
    benchmark::DoNotOptimize(v.holds());
  }
  state.counters["schedules"] =
      static_cast<double>(scilla::schedule_count(a.size(), depth).convert_to<std::uint64_t>());
}

}  // namespace

BENCHMARK(BM_CheckSafe)->ArgsProduct({{2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckSafeReference)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
