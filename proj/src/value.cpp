#include "scilla/value.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "scilla/errors.hpp"

namespace scilla {

Uint uint_monus(const Uint& a, const Uint& b) {
  if (a <= b) return Uint(0);
  return a - b;
}

Tag::Tag(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw std::invalid_argument("tag must be non-empty");
}

bool tags_match(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

MapValue::MapValue(std::vector<Entry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j)
      if (entries_[i].first == entries_[j].first)
        throw std::invalid_argument("duplicate map key '" + entries_[i].first.id + "'");
}

bool MapValue::contains(const Address& key) const { return find(key) != nullptr; }

const Uint* MapValue::find(const Address& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return &v;
  return nullptr;
}

MapValue MapValue::put(const Address& key, Uint value) const {
  MapValue out;
  out.entries_.reserve(entries_.size() + 1);
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const Entry& e) { return e.first == key; });
  if (it == entries_.end()) {
    out.entries_.emplace_back(key, std::move(value));
    out.entries_.insert(out.entries_.end(), entries_.begin(), entries_.end());
  } else {
    out.entries_ = entries_;
    out.entries_[static_cast<std::size_t>(it - entries_.begin())].second = std::move(value);
  }
  return out;
}

MapValue MapValue::remove(const Address& key) const {
  MapValue out;
  out.entries_.reserve(entries_.size());
  for (const auto& e : entries_)
    if (e.first != key) out.entries_.push_back(e);
  return out;
}

const char* type_name(Type t) {
  switch (t) {
    case Type::Uint: return "uint";
    case Type::Bool: return "boolean";
    case Type::Address: return "address";
    case Type::String: return "string";
    case Type::Map: return "address => uint";
    case Type::Payload: return "payload";
  }
  return "?";
}

Type Value::type() const {
  switch (v_.index()) {
    case 0: return Type::Uint;
    case 1: return Type::Bool;
    case 2: return Type::Address;
    case 3: return Type::String;
    default: return Type::Map;
  }
}

namespace {
[[noreturn]] void mismatch(Type want, Type got) {
  throw EvalError(EvalErrorKind::TypeMismatch, std::string("expected ") + type_name(want) +
                                                   ", got " + type_name(got));
}
}  // namespace

const Uint& Value::as_uint() const {
  if (auto* p = std::get_if<Uint>(&v_)) return *p;
  mismatch(Type::Uint, type());
}
bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&v_)) return *p;
  mismatch(Type::Bool, type());
}
const Address& Value::as_address() const {
  if (auto* p = std::get_if<Address>(&v_)) return *p;
  mismatch(Type::Address, type());
}
const std::string& Value::as_string() const {
  if (auto* p = std::get_if<std::string>(&v_)) return *p;
  mismatch(Type::String, type());
}
const MapValue& Value::as_map() const {
  if (auto* p = std::get_if<MapValue>(&v_)) return *p;
  mismatch(Type::Map, type());
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  struct Printer {
    std::ostream& os;
    void operator()(const Uint& u) { os << u; }
    void operator()(bool b) { os << (b ? "true" : "false"); }
    void operator()(const Address& a) { os << '@' << a.id; }
    void operator()(const std::string& s) { os << '"' << s << '"'; }
    void operator()(const MapValue& m) {
      os << '[';
      bool first = true;
      for (const auto& [k, val] : m.entries()) {
        if (!first) os << ", ";
        first = false;
        os << '(' << k.id << ", " << val << ')';
      }
      os << ']';
    }
  };
  std::visit(Printer{os}, v.storage());
  return os;
}

std::ostream& operator<<(std::ostream& os, const Payload& p) {
  struct Printer {
    std::ostream& os;
    void operator()(const OkMsg&) { os << "ok_msg"; }
    void operator()(const NoMsg&) { os << "no_msg"; }
    void operator()(const TextPayload& t) { os << '"' << t.text << '"'; }
    void operator()(const AmountPayload& a) { os << a.amount; }
  };
  std::visit(Printer{os}, p);
  return os;
}

std::ostream& operator<<(std::ostream& os, const Message& m) {
  return os << "Msg{val=" << m.val << ", sender=" << m.sender.id << ", to=" << m.to.id
            << ", tag=" << m.method.text() << ", body=" << m.body << '}';
}

const char* eval_error_name(EvalErrorKind kind) {
  switch (kind) {
    case EvalErrorKind::UnboundVariable: return "UnboundVariable";
    case EvalErrorKind::TypeMismatch: return "TypeMismatch";
    case EvalErrorKind::MapKeyAbsent: return "MapKeyAbsent";
    case EvalErrorKind::UnknownField: return "UnknownField";
    case EvalErrorKind::UnknownAspect: return "UnknownAspect";
    case EvalErrorKind::MalformedMessage: return "MalformedMessage";
  }
  return "?";
}

}  // namespace scilla
