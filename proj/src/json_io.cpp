#include "scilla/json_io.hpp"

#include <limits>

namespace scilla {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string text_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Address address_of(const Json& j, const std::string& where) {
  return Address{text_of(j, where)};
}

}  // namespace

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json uint_to_json(const Uint& u) {
  if (u <= std::numeric_limits<std::uint64_t>::max()) return Json(u.convert_to<std::uint64_t>());
  return Json(u.str());
}

Uint uint_from_json(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Uint(j.get<std::uint64_t>());
  if (j.is_number_integer()) {
    const auto n = j.get<std::int64_t>();
    if (n < 0) bad(where, "expected a non-negative integer");
    return Uint(n);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      bad(where, "expected a decimal digit string");
    return Uint(s);
  }
  bad(where, "expected a non-negative integer");
}

Json value_to_json(const Value& v) {
  Json j = Json::object();
  switch (v.type()) {
    case Type::Uint: j["t"] = "uint"; j["v"] = uint_to_json(v.as_uint()); break;
    case Type::Bool: j["t"] = "bool"; j["v"] = v.as_bool(); break;
    case Type::Address: j["t"] = "address"; j["v"] = v.as_address().id; break;
    case Type::String: j["t"] = "string"; j["v"] = v.as_string(); break;
    case Type::Map: {
      j["t"] = "map";
      Json arr = Json::array();
      for (const auto& [k, n] : v.as_map().entries()) arr.push_back(Json::array({k.id, uint_to_json(n)}));
      j["v"] = std::move(arr);
      break;
    }
    case Type::Payload: break;
  }
  return j;
}

namespace {

MapValue map_from_json(const Json& arr, const std::string& where) {
  if (!arr.is_array()) bad(where, "expected an array of [address, uint] pairs");
  std::vector<MapValue::Entry> entries;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const Json& e = arr[i];
    if (!e.is_array() || e.size() != 2) bad(at, "expected an [address, uint] pair");
    entries.emplace_back(address_of(e[0], at + "[0]"), uint_from_json(e[1], at + "[1]"));
  }
  try {
    return MapValue(std::move(entries));
  } catch (const std::invalid_argument& e) {
    bad(where, e.what());
  }
}

}  // namespace

Value value_from_json(const Json& j, const std::string& where) {
  const std::string t = text_of(member(j, "t", where), where + ".t");
  const Json& v = member(j, "v", where);
  const std::string at = where + ".v";
  if (t == "uint") return Value(uint_from_json(v, at));
  if (t == "bool") {
    if (!v.is_boolean()) bad(at, "expected a boolean");
    return Value(v.get<bool>());
  }
  if (t == "address") return Value(address_of(v, at));
  if (t == "string") return Value(text_of(v, at));
  if (t == "map") return Value(map_from_json(v, at));
  bad(where + ".t", "unknown value type '" + t + "'");
}

Json payload_to_json(const Payload& p) {
  Json j = Json::object();
  if (std::holds_alternative<OkMsg>(p)) {
    j["kind"] = "ok";
  } else if (std::holds_alternative<NoMsg>(p)) {
    j["kind"] = "no";
  } else if (const auto* t = std::get_if<TextPayload>(&p)) {
    j["kind"] = "text";
    j["value"] = t->text;
  } else {
    j["kind"] = "amount";
    j["value"] = uint_to_json(std::get<AmountPayload>(p).amount);
  }
  return j;
}

Payload payload_from_json(const Json& j, const std::string& where) {
  const std::string kind = text_of(member(j, "kind", where), where + ".kind");
  if (kind == "ok") return OkMsg{};
  if (kind == "no") return NoMsg{};
  if (kind == "text") return TextPayload{text_of(member(j, "value", where), where + ".value")};
  if (kind == "amount")
    return AmountPayload{uint_from_json(member(j, "value", where), where + ".value")};
  bad(where + ".kind", "unknown payload kind '" + kind + "'");
}

Json message_to_json(const Message& m) {
  Json j = Json::object();
  j["val"] = uint_to_json(m.val);
  j["sender"] = m.sender.id;
  j["to"] = m.to.id;
  j["tag"] = m.method.text();
  j["body"] = payload_to_json(m.body);
  return j;
}

Message message_from_json(const Json& j, const std::string& where) {
  Message m;
  m.val = uint_from_json(member(j, "val", where), where + ".val");
  m.sender = address_of(member(j, "sender", where), where + ".sender");
  m.to = address_of(member(j, "to", where), where + ".to");
  const std::string tag = text_of(member(j, "tag", where), where + ".tag");
  if (tag.empty()) bad(where + ".tag", "tag must not be empty");
  m.method = Tag(tag);
  if (j.contains("body")) {
    m.body = payload_from_json(j["body"], where + ".body");
  } else {
    m.body = TextPayload{""};
  }
  return m;
}

Json cstate_to_json(const CState& s) {
  Json j = Json::object();
  j["my_id"] = s.my_id.id;
  j["balance"] = uint_to_json(s.balance);
  Json fields = Json::object();
  for (const auto& [name, v] : s.fields.entries()) fields[name] = value_to_json(v);
  j["fields"] = std::move(fields);
  return j;
}

CState cstate_from_json(const Json& j, const std::string& where) {
  CState s;
  s.my_id = address_of(member(j, "my_id", where), where + ".my_id");
  s.balance = uint_from_json(member(j, "balance", where), where + ".balance");
  const Json& fields = member(j, "fields", where);
  if (!fields.is_object()) bad(where + ".fields", "expected an object");
  std::vector<Store::Entry> entries;
  for (auto it = fields.begin(); it != fields.end(); ++it)
    entries.emplace_back(it.key(), value_from_json(it.value(), where + ".fields." + it.key()));
  s.fields = Store(std::move(entries));
  return s;
}

Json trace_to_json(const Trace& t) {
  Json arr = Json::array();
  for (const Step& s : t) {
    Json j = Json::object();
    j["pre"] = cstate_to_json(s.pre);
    j["post"] = cstate_to_json(s.post);
    j["out"] = s.out ? message_to_json(*s.out) : Json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

Trace trace_from_json(const Json& j) {
  if (!j.is_array()) bad("trace", "expected an array");
  Trace t;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = "trace[" + std::to_string(i) + "]";
    Step s;
    s.pre = cstate_from_json(member(j[i], "pre", at), at + ".pre");
    s.post = cstate_from_json(member(j[i], "post", at), at + ".post");
    const Json& out = member(j[i], "out", at);
    if (!out.is_null()) s.out = message_from_json(out, at + ".out");
    t.push_back(std::move(s));
  }
  return t;
}

Json schedule_to_json(const Schedule& sc) {
  Json arr = Json::array();
  for (const auto& el : sc) {
    Json j = Json::object();
    j["block_num"] = uint_to_json(el.bstate.block_num);
    j["msg"] = message_to_json(el.msg);
    arr.push_back(std::move(j));
  }
  return arr;
}

Schedule schedule_from_json(const Json& j) {
  if (!j.is_array()) bad("schedule", "expected an array");
  Schedule sc;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = "schedule[" + std::to_string(i) + "]";
    ScheduleElement el;
    el.bstate.block_num = uint_from_json(member(j[i], "block_num", at), at + ".block_num");
    el.msg = message_from_json(member(j[i], "msg", at), at + ".msg");
    sc.push_back(std::move(el));
  }
  return sc;
}

Json alphabet_to_json(const Alphabet& a) {
  Json j = Json::object();
  Json bs = Json::array();
  for (const auto& b : a.bstates) bs.push_back(Json{{"block_num", uint_to_json(b.block_num)}});
  Json ms = Json::array();
  for (const auto& m : a.messages) ms.push_back(message_to_json(m));
  j["bstates"] = std::move(bs);
  j["messages"] = std::move(ms);
  return j;
}

Alphabet alphabet_from_json(const Json& j) {
  Alphabet a;
  const Json& bs = member(j, "bstates", "alphabet");
  const Json& ms = member(j, "messages", "alphabet");
  if (!bs.is_array()) bad("alphabet.bstates", "expected an array");
  if (!ms.is_array()) bad("alphabet.messages", "expected an array");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string at = "alphabet.bstates[" + std::to_string(i) + "]";
    const Json& b = bs[i].is_object() ? member(bs[i], "block_num", at) : bs[i];
    a.bstates.push_back(BState{uint_from_json(b, at)});
  }
  for (std::size_t i = 0; i < ms.size(); ++i)
    a.messages.push_back(message_from_json(ms[i], "alphabet.messages[" + std::to_string(i) + "]"));
  return a;
}

Store params_from_json(const Json& j, const ContractDef& c) {
  if (!j.is_object()) bad("params", "expected an object");
  std::vector<Store::Entry> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string at = "params." + it.key();
    const TypedName* decl = nullptr;
    for (const auto& p : c.params)
      if (p.name == it.key()) decl = &p;
    if (decl == nullptr) bad(at, "not a parameter of contract " + c.name);
    const Json& v = it.value();
    switch (decl->type) {
      case TypeTag::Uint: out.emplace_back(it.key(), Value(uint_from_json(v, at))); break;
      case TypeTag::Bool:
        if (!v.is_boolean()) bad(at, "expected a boolean");
        out.emplace_back(it.key(), Value(v.get<bool>()));
        break;
      case TypeTag::Address: out.emplace_back(it.key(), Value(address_of(v, at))); break;
      case TypeTag::String: out.emplace_back(it.key(), Value(text_of(v, at))); break;
      case TypeTag::Map: out.emplace_back(it.key(), Value(map_from_json(v, at))); break;
    }
  }
  return Store(std::move(out));
}

Json params_to_json(const Store& params) {
  Json j = Json::object();
  for (const auto& [name, v] : params.entries()) {
    Json tv = value_to_json(v);
    j[name] = tv["v"];
  }
  return j;
}

Json verdict_to_json(const Verdict& v) {
  Json j = Json::object();
  j["kind"] = verdict_kind(v);
  j["property"] = v.property;
  j["mode"] = v.mode;
  Json bound = Json::object();
  bound["depth"] = v.bound.depth;
  if (v.bound.depth2 != 0) bound["continuation_depth"] = v.bound.depth2;
  bound["alphabet_size"] = v.bound.alphabet_size;
  if (v.mode == "inductive") {
    bound["samples"] = v.bound.samples;
    bound["seed"] = v.bound.seed;
  }
  j["bound"] = std::move(bound);
  if (const auto* h = std::get_if<Holds>(&v.result)) {
    j["schedules_checked"] = uint_to_json(h->schedules_checked);
    j["premise_states"] = h->premise_states;
    j["states_explored"] = h->states_explored;
  } else if (const auto* w = std::get_if<Violated>(&v.result)) {
    j["failing_index"] = w->failing_index;
    j["detail"] = w->detail;
    if (w->continuation_from != 0) j["continuation_from"] = w->continuation_from;
    if (w->start) j["start"] = cstate_to_json(*w->start);
    if (w->at_block) j["at_block"] = uint_to_json(w->at_block->block_num);
    j["schedule"] = schedule_to_json(w->schedule);
    j["trace"] = trace_to_json(w->trace);
  } else {
    j["reason"] = std::get<Inconclusive>(v.result).reason;
  }
  return j;
}

Json network_result_to_json(const NetworkResult& r) {
  Json j = Json::object();
  j["status"] = network_status_name(r.status);
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json e = Json::object();
    e["contract"] = s.contract.id;
    e["input"] = message_to_json(s.input);
    if (!s.continuation.empty()) e["continuation"] = s.continuation;
    e["pre"] = cstate_to_json(s.step.pre);
    e["post"] = cstate_to_json(s.step.post);
    e["out"] = s.step.out ? message_to_json(*s.step.out) : Json(nullptr);
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  Json deliveries = Json::array();
  for (const auto& m : r.deliveries) deliveries.push_back(message_to_json(m));
  j["deliveries"] = std::move(deliveries);
  Json dropped = Json::array();
  for (const auto& d : r.dropped)
    dropped.push_back(Json{{"contract", d.contract.id}, {"continuation", d.continuation}});
  j["dropped_continuations"] = std::move(dropped);
  return j;
}

}  // namespace scilla
