#include <gtest/gtest.h>

#include <random>

#include "scilla/lexer.hpp"
#include "scilla/parser.hpp"
#include "support.hpp"

using namespace scilla;
using testing_support::corpus_path;
using testing_support::read_text;

namespace {

std::vector<TokenKind> kinds(std::string_view src) {
  std::vector<TokenKind> out;
  for (const auto& t : tokenize(src)) out.push_back(t.kind);
  return out;
}

ParseError parse_error(std::string_view src) {
  try {
    parse_contract(src);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return ParseError(ParseErrorKind::Syntax, {}, "", "");
}

// Character offset of a 1-based (line, column) position.
std::size_t offset_of(std::string_view text, int line, int column) {
  std::size_t off = 0;
  for (int l = 1; l < line; ++l) {
    const auto nl = text.find('\n', off);
    if (nl == std::string_view::npos) return std::string_view::npos;
    off = nl + 1;
  }
  return off + static_cast<std::size_t>(column - 1);
}

}  // namespace

TEST(Tokenize, DropsComments) {
  using K = TokenKind;
  EXPECT_EQ(kinds("(* note *) let x = 1"),
            (std::vector<K>{K::KwLet, K::Ident, K::Eq, K::Int, K::Eof}));
}

TEST(Tokenize, FieldRead) {
  using K = TokenKind;
  const auto toks = tokenize("bs <- & backers;");
  EXPECT_EQ(kinds("bs <- & backers;"),
            (std::vector<K>{K::Ident, K::LeftArrow, K::Amp, K::Ident, K::Semi, K::Eof}));
  EXPECT_EQ(toks[0].text, "bs");
  EXPECT_EQ(toks[3].text, "backers");
  EXPECT_EQ(toks[3].span.column, 9);
}

TEST(Tokenize, ChainRead) {
  using K = TokenKind;
  EXPECT_EQ(kinds("blk <- && block_number;"),
            (std::vector<K>{K::Ident, K::LeftArrow, K::AmpAmp, K::Ident, K::Semi, K::Eof}));
}

TEST(Tokenize, NestedComments) {
  EXPECT_EQ(kinds("(* a (* b *) c *) x").size(), 2u);
}

TEST(Tokenize, Errors) {
  try {
    tokenize("x (* never closed");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::UnterminatedComment);
  }
  try {
    tokenize("x = 1 $ 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseErrorKind::IllegalCharacter);
    EXPECT_EQ(e.span().column, 7);
  }
}

TEST(ParseContract, Crowdfunding) {
  const ContractDef c = parse_contract(read_text(corpus_path("crowdfunding.scilla")));
  EXPECT_EQ(c.name, "Crowdfunding");
  ASSERT_EQ(c.params.size(), 3u);
  EXPECT_EQ(c.params[0].name, "owner");
  EXPECT_EQ(c.params[0].type, TypeTag::Address);
  EXPECT_EQ(c.params[1].name, "max_block");
  EXPECT_EQ(c.params[2].name, "goal");
  ASSERT_EQ(c.fields.size(), 2u);
  EXPECT_EQ(c.fields[0].name, "backers");
  EXPECT_EQ(c.fields[0].type, TypeTag::Map);
  EXPECT_EQ(c.fields[1].name, "funded");
  ASSERT_EQ(c.transitions.size(), 3u);
  EXPECT_EQ(c.transitions[0].tag, "Donate");
  EXPECT_EQ(c.transitions[1].tag, "GetFunds");
  EXPECT_EQ(c.transitions[2].tag, "Claim");
  EXPECT_TRUE(c.transitions[1].filter.has_value());
}

TEST(ParseContract, EmptyContract) {
  const ContractDef c = parse_contract("contract Empty () {}");
  EXPECT_EQ(c.name, "Empty");
  EXPECT_TRUE(c.transitions.empty());
  EXPECT_TRUE(c.params.empty());
}

TEST(ParseContract, MissingParameterListFailsAtEndOfHeader) {
  const std::string src = "contract X () {}\ntransition T";
  const ParseError e = parse_error(src);
  EXPECT_EQ(e.span().line, 2);
  EXPECT_EQ(e.span().column, 13);
  EXPECT_EQ(e.found(), "end of input");
}

TEST(ParseContract, RejectsKeywordsAsIdentifiers) {
  EXPECT_THROW(parse_contract("contract X (then : uint) {}"), ParseError);
}

TEST(ParseContract, TailCommandMustEndTheBlock) {
  const std::string src =
      "contract X () {}\n"
      "transition T (sender : address)\n"
      "  send (<to -> sender, amount -> 0, tag -> \"main\">, MT)\n"
      "  x := 1;\n";
  EXPECT_THROW(parse_contract(src), ParseError);
}

TEST(PrettyPrint, EmptyContractCanonicalForm) {
  EXPECT_EQ(pretty_print(parse_contract("contract Empty () {}")), "contract Empty ()\n{\n}\n");
}

TEST(PrettyPrint, ContinuationBlock) {
  const ContractDef c = parse_contract(read_text(corpus_path("caller.scilla")));
  const std::string text = pretty_print(c);
  EXPECT_NE(text.find("continuation UseResult (res : uint)"), std::string::npos);
  EXPECT_EQ(parse_contract(text), c);
}

TEST(PrettyPrint, CorpusRoundTrip) {
  for (const char* name : {"crowdfunding.scilla", "crowdfunding_claim_mutant.scilla",
                           "caller.scilla", "server.scilla", "looper.scilla"}) {
    const ContractDef c = parse_contract(read_text(corpus_path(name)));
    const std::string printed = pretty_print(c);
    EXPECT_EQ(parse_contract(printed), c) << name;
    EXPECT_EQ(pretty_print(parse_contract(printed)), printed) << name;
  }
}

TEST(ParseContract, Deterministic) {
  const std::string src = read_text(corpus_path("crowdfunding.scilla"));
  EXPECT_EQ(parse_contract(src), parse_contract(src));
}

TEST(ParseContract, ErrorSpansLieInsideTheInput) {
  const std::string base = read_text(corpus_path("crowdfunding.scilla"));
  std::mt19937_64 rng(3);
  const std::string noise = "(*)<-&;:=>{}[]\"x1 if then else send";
  int errors = 0;
  for (int i = 0; i < 1500; ++i) {
    std::string src = base;
    std::uniform_int_distribution<std::size_t> pos(0, src.size() - 1);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    std::uniform_int_distribution<std::size_t> ch(0, noise.size() - 1);
    const std::size_t p = pos(rng);
    if (i % 3 == 0) {
      src.erase(p, len(rng));
    } else if (i % 3 == 1) {
      src.insert(p, 1, noise[ch(rng)]);
    } else {
      src.resize(p);
    }
    try {
      parse_contract(src);
    } catch (const ParseError& e) {
      ++errors;
      ASSERT_GE(e.span().line, 1);
      ASSERT_GE(e.span().column, 1);
      ASSERT_LE(offset_of(src, e.span().line, e.span().column), src.size()) << src;
    }
  }
  EXPECT_GT(errors, 500);
}

namespace {

// Random, not necessarily well-typed, ASTs over the printable subset.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  ContractDef contract() {
    ContractDef c;
    c.name = "C" + std::to_string(upto(99));
    for (int i = 0, n = upto(3); i < n; ++i) c.params.push_back(typed());
    for (int i = 0, n = upto(3); i < n; ++i)
      c.fields.push_back(FieldDecl{name(), type_tag(), expr(2), {}});
    for (int i = 0, n = upto(2); i < n; ++i)
      c.continuations.push_back(ContinuationDef{"K" + std::to_string(i), typed(), cmd(3), {}});
    for (int i = 0, n = upto(3); i < n; ++i) {
      TransitionDef t;
      t.tag = "T" + std::to_string(i);
      for (int j = 0, m = upto(3); j < m; ++j) t.params.push_back(typed());
      if (coin()) t.filter = expr(2);
      t.body = cmd(4);
      c.transitions.push_back(std::move(t));
    }
    return c;
  }

  Expr expr(int depth) {
    const int choice = depth <= 0 ? upto(4) : upto(10);
    switch (choice) {
      case 0: return lit(Value(Uint(upto(1000))));
      case 1: return lit(Value(coin()));
      case 2: return lit(Value(std::string(coin() ? "main" : "a b\"c")));
      case 3: return Expr{Expr::Var{name()}, {}};
      case 4: return lit(Value(MapValue{}));
      case 5: return Expr{Expr::PayloadLit{coin() ? Payload(OkMsg{}) : Payload(NoMsg{})}, {}};
      case 6: return Expr{Expr::Not{expr(depth - 1)}, {}};
      case 7: {
        const BinOp ops[] = {BinOp::Add, BinOp::Sub, BinOp::Le, BinOp::Lt,
                             BinOp::Eq,  BinOp::And, BinOp::Or};
        return Expr{Expr::Binary{ops[upto(6)], expr(depth - 1), expr(depth - 1)}, {}};
      }
      case 8: {
        const Builtin fns[] = {Builtin::Put, Builtin::Get, Builtin::Remove, Builtin::Contains};
        const Builtin fn = fns[upto(3)];
        std::vector<Expr> args;
        for (int i = 0, n = fn == Builtin::Put ? 3 : 2; i < n; ++i) args.push_back(expr(depth - 1));
        return Expr{Expr::Call{fn, std::move(args)}, {}};
      }
      default: return Expr{Expr::Let{name(), expr(depth - 1), expr(depth - 1)}, {}};
    }
  }

  Cmd cmd(int depth) {
    const int choice = depth <= 0 ? 5 + upto(2) : upto(7);
    switch (choice) {
      case 0: return Cmd{Cmd::FieldRead{name(), name(), cmd(depth - 1)}, {}};
      case 1: return Cmd{Cmd::FieldWrite{name(), expr(2), cmd(depth - 1)}, {}};
      case 2: return Cmd{Cmd::ChainRead{name(), "block_number", cmd(depth - 1)}, {}};
      case 3: return Cmd{Cmd::LetIn{name(), expr(2), cmd(depth - 1)}, {}};
      case 4: return Cmd{Cmd::If{expr(2), cmd(depth - 1), cmd(depth - 1)}, {}};
      case 5: {
        Cmd::Send s;
        const char* keys[] = {"to", "amount", "tag", "msg"};
        for (int i = 0, n = 1 + upto(3); i < n; ++i)
          s.entries.push_back(MessageEntry{keys[upto(3)], expr(1), {}});
        s.continuation = coin() ? std::string(kEmptyContinuation) : "K0";
        return Cmd{std::move(s), {}};
      }
      case 6: return Cmd{Cmd::Return{expr(2)}, {}};
      default: return Cmd{Cmd::End{}, {}};
    }
  }

 private:
  int upto(int n) { return std::uniform_int_distribution<int>(0, n)(rng_); }
  bool coin() { return upto(1) == 1; }
  Expr lit(Value v) { return Expr{Expr::Literal{std::move(v)}, {}}; }
  std::string name() {
    static const char* names[] = {"x", "y", "bs", "blk", "owner", "value", "sender", "n1"};
    return names[upto(7)];
  }
  TypeTag type_tag() {
    const TypeTag tags[] = {TypeTag::Uint, TypeTag::Bool, TypeTag::Address, TypeTag::String,
                            TypeTag::Map};
    return tags[upto(4)];
  }
  TypedName typed() { return TypedName{name(), type_tag(), {}}; }

  std::mt19937_64 rng_;
};

}  // namespace

TEST(PrettyPrint, RoundTripOnRandomAsts) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    AstGen gen(seed);
    const ContractDef c = gen.contract();
    const std::string printed = pretty_print(c);
    ContractDef back;
    ASSERT_NO_THROW(back = parse_contract(printed)) << printed;
    ASSERT_EQ(back, c) << printed;
  }
}

TEST(PrettyPrint, ExpressionRoundTripOnRandomAsts) {
  AstGen gen(99);
  for (int i = 0; i < 2000; ++i) {
    const Expr e = gen.expr(4);
    const std::string printed = pretty_print(e);
    ASSERT_EQ(parse_expr(printed), e) << printed;
  }
}
