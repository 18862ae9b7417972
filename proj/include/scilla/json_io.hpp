#ifndef SCILLA_JSON_IO_HPP
#define SCILLA_JSON_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "scilla/network.hpp"
#include "scilla/propcheck.hpp"
#include "scilla/runtime.hpp"

namespace scilla {

/// Insertion-ordered JSON so output key order is stable.
using Json = nlohmann::ordered_json;

/// Malformed JSON text or a document that does not match the expected
/// shape. The message names the offending location.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json parse_json_text(std::string_view text);
/// Two-space indentation plus a trailing newline.
std::string dump_json(const Json& j);

/// Numbers when they fit in 64 bits, decimal strings otherwise.
Json uint_to_json(const Uint& u);
Uint uint_from_json(const Json& j, const std::string& where);

/// `{"t": "uint"|"bool"|"address"|"string"|"map", "v": ...}`; maps are
/// arrays of [address, uint] pairs in sequence order.
Json value_to_json(const Value& v);
Value value_from_json(const Json& j, const std::string& where);

/// `{"kind": "ok"|"no"|"text"|"amount", "value": ...}`
Json payload_to_json(const Payload& p);
Payload payload_from_json(const Json& j, const std::string& where);

/// `{"val", "sender", "to", "tag", "body"}`; a missing body reads as empty text.
Json message_to_json(const Message& m);
Message message_from_json(const Json& j, const std::string& where);

Json cstate_to_json(const CState& s);
CState cstate_from_json(const Json& j, const std::string& where);

Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j);

/// `[{"block_num": N, "msg": {...}}, ...]`
Json schedule_to_json(const Schedule& sc);
Schedule schedule_from_json(const Json& j);

/// `{"bstates": [N | {"block_num": N}, ...], "messages": [...]}`
Json alphabet_to_json(const Alphabet& a);
Alphabet alphabet_from_json(const Json& j);

/// Untyped parameter object (`{"owner": "A0", "goal": 100}`) converted
/// using the declared parameter types of `c`.
Store params_from_json(const Json& j, const ContractDef& c);
Json params_to_json(const Store& params);

Json verdict_to_json(const Verdict& v);
Json network_result_to_json(const NetworkResult& r);

}  // namespace scilla

#endif  // SCILLA_JSON_IO_HPP
