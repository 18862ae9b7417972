#ifndef SCILLA_VALUE_HPP
#define SCILLA_VALUE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace scilla {

/// Non-negative arbitrary-precision integer. Subtraction on it must go through
/// uint_monus(); nothing in the runtime ever produces a negative Uint.
using Uint = boost::multiprecision::cpp_int;

/// Natural-number subtraction: max(a - b, 0).
Uint uint_monus(const Uint& a, const Uint& b);

struct Address {
  std::string id;

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;
};

/// Identifier of a transition or continuation. Never empty.
class Tag {
 public:
  Tag() = default;
  explicit Tag(std::string text);

  const std::string& text() const { return text_; }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const Tag&, const Tag&) = default;
  friend auto operator<=>(const Tag&, const Tag&) = default;

 private:
  std::string text_;
};

/// Address => uint association sequence. Keys are unique; the sequence order
/// is observable (traces are compared element for element).
class MapValue {
 public:
  using Entry = std::pair<Address, Uint>;

  MapValue() = default;
  explicit MapValue(std::vector<Entry> entries);

  bool contains(const Address& key) const;
  const Uint* find(const Address& key) const;
  /// New keys are consed onto the front; an existing key is replaced in place.
  MapValue put(const Address& key, Uint value) const;
  MapValue remove(const Address& key) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const MapValue&, const MapValue&) = default;
  friend bool operator<(const MapValue& a, const MapValue& b) { return a.entries_ < b.entries_; }

 private:
  std::vector<Entry> entries_;
};

enum class Type { Uint, Bool, Address, String, Map, Payload };

const char* type_name(Type t);

class Value {
 public:
  using Storage = std::variant<Uint, bool, Address, std::string, MapValue>;

  Value() : v_(Uint(0)) {}
  Value(Uint u) : v_(std::move(u)) {}
  Value(bool b) : v_(b) {}
  Value(Address a) : v_(std::move(a)) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(MapValue m) : v_(std::move(m)) {}

  static Value uint(std::uint64_t n) { return Value(Uint(n)); }
  static Value address(std::string id) { return Value(Address{std::move(id)}); }
  static Value str(std::string s) { return Value(std::move(s)); }

  Type type() const;

  bool is_uint() const { return std::holds_alternative<Uint>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_address() const { return std::holds_alternative<Address>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_map() const { return std::holds_alternative<MapValue>(v_); }

  // Accessors throw TypeMismatch when the alternative does not match.
  const Uint& as_uint() const;
  bool as_bool() const;
  const Address& as_address() const;
  const std::string& as_string() const;
  const MapValue& as_map() const;

  const Storage& storage() const { return v_; }

  friend bool operator==(const Value&, const Value&) = default;
  friend bool operator<(const Value& a, const Value& b) { return a.v_ < b.v_; }

 private:
  Storage v_;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

struct OkMsg {
  friend bool operator==(const OkMsg&, const OkMsg&) = default;
  friend bool operator<(const OkMsg&, const OkMsg&) { return false; }
};
struct NoMsg {
  friend bool operator==(const NoMsg&, const NoMsg&) = default;
  friend bool operator<(const NoMsg&, const NoMsg&) { return false; }
};
struct TextPayload {
  std::string text;
  friend bool operator==(const TextPayload&, const TextPayload&) = default;
  friend bool operator<(const TextPayload& a, const TextPayload& b) { return a.text < b.text; }
};
struct AmountPayload {
  Uint amount;
  friend bool operator==(const AmountPayload&, const AmountPayload&) = default;
  friend bool operator<(const AmountPayload& a, const AmountPayload& b) { return a.amount < b.amount; }
};

using Payload = std::variant<OkMsg, NoMsg, TextPayload, AmountPayload>;

std::ostream& operator<<(std::ostream& os, const Payload& p);

/// Method tag carried by every outgoing message (the "main" entry point).
inline const char* const kDefaultTag = "main";
/// Method tag of the message produced by a `return` command.
inline const char* const kReturnTag = "return";

struct Message {
  Uint val;
  Address sender;
  Address to;
  Tag method;
  Payload body;

  friend bool operator==(const Message&, const Message&) = default;
};

std::ostream& operator<<(std::ostream& os, const Message& m);

/// Case-insensitive (ASCII) comparison used for message dispatch and the
/// tag-uniqueness rule.
bool tags_match(std::string_view a, std::string_view b);

}  // namespace scilla

#endif  // SCILLA_VALUE_HPP
