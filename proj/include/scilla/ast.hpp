#ifndef SCILLA_AST_HPP
#define SCILLA_AST_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scilla/value.hpp"

namespace scilla {

/// Position of a token or node in the source text.
///
/// Spans are metadata: they never take part in AST equality, so a contract
/// and its pretty-printed re-parse compare equal even though every node moved.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

/// Immutable, shareable owning pointer with value equality.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  const T& get() const { return *ptr_; }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

enum class BinOp { Add, Sub, Le, Lt, Eq, And, Or };
enum class Builtin { Put, Get, Remove, Contains };

const char* binop_symbol(BinOp op);
const char* builtin_name(Builtin fn);

/// Pure expression.
struct Expr {
  struct Literal {
    Value value;
    friend bool operator==(const Literal&, const Literal&) = default;
  };
  /// `ok_msg` / `no_msg` payload constants.
  struct PayloadLit {
    Payload payload;
    friend bool operator==(const PayloadLit&, const PayloadLit&) = default;
  };
  struct Var {
    std::string name;
    friend bool operator==(const Var&, const Var&) = default;
  };
  struct Not {
    Box<Expr> operand;
    friend bool operator==(const Not&, const Not&) = default;
  };
  struct Binary {
    BinOp op;
    Box<Expr> lhs;
    Box<Expr> rhs;
    friend bool operator==(const Binary&, const Binary&) = default;
  };
  struct Call {
    Builtin fn;
    std::vector<Expr> args;
    friend bool operator==(const Call&, const Call&) = default;
  };
  struct Let {
    std::string name;
    Box<Expr> bound;
    Box<Expr> body;
    friend bool operator==(const Let&, const Let&) = default;
  };

  using Node = std::variant<Literal, PayloadLit, Var, Not, Binary, Call, Let>;

  Node node;
  SourceSpan span;

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class TypeTag { Uint, Bool, Address, String, Map };

Type to_value_type(TypeTag t);
const char* type_tag_name(TypeTag t);

struct TypedName {
  std::string name;
  TypeTag type;
  SourceSpan span;
  friend bool operator==(const TypedName&, const TypedName&) = default;
};

/// One `key -> expr` entry of a message literal.
struct MessageEntry {
  std::string key;
  Expr value;
  SourceSpan span;
  friend bool operator==(const MessageEntry&, const MessageEntry&) = default;
};

inline const char* const kEmptyContinuation = "MT";

/// Effectful command. Sequencing is encoded by the `next` member of the
/// non-terminal forms; a sequence that runs out without a send/return ends
/// in End.
struct Cmd {
  struct FieldRead {
    std::string var;
    std::string field;
    Box<Cmd> next;
    friend bool operator==(const FieldRead&, const FieldRead&) = default;
  };
  struct FieldWrite {
    std::string field;
    Expr value;
    Box<Cmd> next;
    friend bool operator==(const FieldWrite&, const FieldWrite&) = default;
  };
  struct ChainRead {
    std::string var;
    std::string aspect;
    Box<Cmd> next;
    friend bool operator==(const ChainRead&, const ChainRead&) = default;
  };
  struct LetIn {
    std::string var;
    Expr value;
    Box<Cmd> next;
    friend bool operator==(const LetIn&, const LetIn&) = default;
  };
  struct If {
    Expr cond;
    Box<Cmd> then_branch;
    Box<Cmd> else_branch;
    friend bool operator==(const If&, const If&) = default;
  };
  struct Send {
    std::vector<MessageEntry> entries;
    std::string continuation;
    friend bool operator==(const Send&, const Send&) = default;
  };
  struct Return {
    Expr value;
    friend bool operator==(const Return&, const Return&) = default;
  };
  struct End {
    friend bool operator==(const End&, const End&) = default;
  };

  using Node = std::variant<FieldRead, FieldWrite, ChainRead, LetIn, If, Send, Return, End>;

  Node node{End{}};
  SourceSpan span;

  friend bool operator==(const Cmd&, const Cmd&) = default;
};

struct TransitionDef {
  std::string tag;
  std::vector<TypedName> params;
  std::optional<Expr> filter;
  Cmd body;
  SourceSpan span;
  friend bool operator==(const TransitionDef&, const TransitionDef&) = default;
};

struct ContinuationDef {
  std::string name;
  TypedName param;
  Cmd body;
  SourceSpan span;
  friend bool operator==(const ContinuationDef&, const ContinuationDef&) = default;
};

struct FieldDecl {
  std::string name;
  TypeTag type;
  Expr init;
  SourceSpan span;
  friend bool operator==(const FieldDecl&, const FieldDecl&) = default;
};

struct ContractDef {
  std::string name;
  std::vector<TypedName> params;
  std::vector<FieldDecl> fields;
  std::vector<TransitionDef> transitions;
  std::vector<ContinuationDef> continuations;
  SourceSpan span;

  const TransitionDef* find_transition(std::string_view tag) const;
  const ContinuationDef* find_continuation(std::string_view name) const;
  const FieldDecl* find_field(std::string_view name) const;

  friend bool operator==(const ContractDef&, const ContractDef&) = default;
};

/// Implicit read-only field holding the contract balance.
inline const char* const kBalanceField = "balance";
/// The only blockchain aspect exposed to `x <- && g;`.
inline const char* const kBlockNumberAspect = "block_number";

/// Message components a transition may declare as parameters, and their types.
std::optional<TypeTag> message_component_type(std::string_view name);

}  // namespace scilla

#endif  // SCILLA_AST_HPP
