#ifndef SCILLA_TEST_SUPPORT_HPP
#define SCILLA_TEST_SUPPORT_HPP

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "crowdfunding_oracle.hpp"
#include "scilla/parser.hpp"
#include "scilla/propcheck.hpp"
#include "scilla/runtime.hpp"

namespace testing_support {

inline std::string corpus_path(const std::string& name) {
  return std::string(SCILLA_CORPUS_DIR) + "/" + name;
}

inline std::string tests_path(const std::string& name) {
  return std::string(SCILLA_TESTS_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::shared_ptr<const scilla::ContractDef> load_corpus(const std::string& name) {
  return std::make_shared<const scilla::ContractDef>(
      scilla::parse_contract(read_text(corpus_path(name))));
}

inline scilla::ContractInstance crowdfunding(const std::string& file = "crowdfunding.scilla",
                                             scilla::Uint balance = 0) {
  return scilla::instantiate(load_corpus(file), scilla::Address{"C"}, std::move(balance),
                             scilla::canonical_params());
}

inline scilla::Message msg(unsigned val, const std::string& sender, const std::string& tag,
                           const std::string& to = "C") {
  return scilla::Message{scilla::Uint(val), scilla::Address{sender}, scilla::Address{to},
                         scilla::Tag(tag), scilla::TextPayload{""}};
}

inline scilla::ScheduleElement at(unsigned block, scilla::Message m) {
  return scilla::ScheduleElement{scilla::BState{scilla::Uint(block)}, std::move(m)};
}

inline oracle::CState oracle_state0() {
  return oracle::init_state(scilla::Address{"C"}, scilla::Address{"A0"}, 10, 100);
}

/// Schedule frozen in tests/golden: two donations, a refund, a failed
/// collection.
inline scilla::Schedule golden_schedule() {
  return {at(1, msg(5, "A1", "donate")), at(2, msg(7, "A2", "donate")),
          at(11, msg(0, "A1", "claim")), at(11, msg(0, "A0", "getfunds"))};
}

}  // namespace testing_support

#endif  // SCILLA_TEST_SUPPORT_HPP
