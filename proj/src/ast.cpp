#include "scilla/ast.hpp"

namespace scilla {

const char* binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Le: return "<=";
    case BinOp::Lt: return "<";
    case BinOp::Eq: return "==";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Put: return "put";
    case Builtin::Get: return "get";
    case Builtin::Remove: return "remove";
    case Builtin::Contains: return "contains";
  }
  return "?";
}

Type to_value_type(TypeTag t) {
  switch (t) {
    case TypeTag::Uint: return Type::Uint;
    case TypeTag::Bool: return Type::Bool;
    case TypeTag::Address: return Type::Address;
    case TypeTag::String: return Type::String;
    case TypeTag::Map: return Type::Map;
  }
  return Type::Uint;
}

const char* type_tag_name(TypeTag t) { return type_name(to_value_type(t)); }

const TransitionDef* ContractDef::find_transition(std::string_view tag) const {
  for (const auto& t : transitions)
    if (tags_match(t.tag, tag)) return &t;
  return nullptr;
}

const ContinuationDef* ContractDef::find_continuation(std::string_view name) const {
  for (const auto& k : continuations)
    if (k.name == name) return &k;
  return nullptr;
}

const FieldDecl* ContractDef::find_field(std::string_view name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

std::optional<TypeTag> message_component_type(std::string_view name) {
  if (name == "sender" || name == "to") return TypeTag::Address;
  if (name == "value") return TypeTag::Uint;
  if (name == "tag") return TypeTag::String;
  return std::nullopt;
}

}  // namespace scilla
