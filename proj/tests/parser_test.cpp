#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

namespace texp {
namespace {

using testing::parseOrThrow;

// Fully parenthesized rendering, used as the golden parse tree.
std::string tree(const TermStore &s, NodeId n) {
  switch (s.op(n)) {
  case Op::Eps:
    return "eps";
  case Op::Ref:
    return s.equation(s.refEquation(n)).name;
  case Op::Prefix:
    return "(" + toString(s.eventType(n)) + " : " + tree(s, s.tail(n)) + ")";
  case Op::Binder:
    return "(var " + s.binderVar(n) + ". " + tree(s, s.binderBody(n)) + ")";
  case Op::Cat:
    return "(" + tree(s, s.left(n)) + " . " + tree(s, s.right(n)) + ")";
  case Op::And:
    return "(" + tree(s, s.left(n)) + " /\\ " + tree(s, s.right(n)) + ")";
  case Op::Or:
    return "(" + tree(s, s.left(n)) + " \\/ " + tree(s, s.right(n)) + ")";
  case Op::Shuffle:
    return "(" + tree(s, s.left(n)) + " | " + tree(s, s.right(n)) + ")";
  }
  return "?";
}

constexpr const char *kLetters = R"(
b = eps; c = eps; d = eps; e = eps;
type a matches msg("a", _);
type a(x) matches msg("a", x);
type b matches msg("b", _);
type b(x) matches msg("b", x);
type c matches msg("c", _);
)";

std::string parseTree(const std::string &expr) {
  auto p = parseOrThrow("domain messages; main M; M = " + expr + ";" + kLetters);
  return tree(p.store, *p.store.equation(p.main).body);
}

TEST(Precedence, PrefixThenCatThenOrThenShuffle) {
  EXPECT_EQ(parseTree(R"(a : b . c \/ d | e)"), R"(((((a : b) . c) \/ d) | e))");
}

TEST(Precedence, PrefixIsRightAssociative) { EXPECT_EQ(parseTree("a : b : c : eps"), "(a : (b : (c : eps)))"); }

TEST(Precedence, BinaryOperatorsAssociateLeft) {
  EXPECT_EQ(parseTree("b . c . d"), "((b . c) . d)");
  EXPECT_EQ(parseTree("b | c | d"), "((b | c) | d)");
  EXPECT_EQ(parseTree(R"(b \/ c \/ d)"), R"(((b \/ c) \/ d))");
  EXPECT_EQ(parseTree(R"(b /\ c /\ d)"), R"(((b /\ c) /\ d))");
}

TEST(Precedence, AndBindsTighterThanOr) {
  EXPECT_EQ(parseTree(R"(b /\ c \/ d /\ e)"), R"(((b /\ c) \/ (d /\ e)))");
}

TEST(Precedence, BinderExtendsToTheRight) {
  EXPECT_EQ(parseTree("var x. a(x) : eps | b"), "(var x. ((a(x) : eps) | b))");
  EXPECT_EQ(parseTree(R"(b \/ var x. a(x) : eps . c)"), R"((b \/ (var x. ((a(x) : eps) . c))))");
}

TEST(Precedence, ParenthesesOverride) {
  EXPECT_EQ(parseTree("a : (b . c)"), "(a : (b . c))");
  EXPECT_EQ(parseTree(R"((b | c) \/ d)"), R"(((b | c) \/ d))");
}

TEST(Precedence, FormatterUsesMinimalParentheses) {
  auto p = parseOrThrow(std::string("domain messages; main M; M = ((a : b) . c) \\/ (d | e);") + kLetters);
  EXPECT_EQ(formatExpr(p.store, *p.store.equation(p.main).body), R"(a : b . c \/ (d | e))");
  auto q = parseOrThrow(std::string("domain messages; main M; M = (var x. a(x) : eps) | b;") + kLetters);
  EXPECT_EQ(formatExpr(q.store, *q.store.equation(q.main).body), "(var x. a(x) : eps) | b");
}

TEST(ParseSpec, SyncSpecFromSource) {
  auto p = parseOrThrow(testing::sampleText("sync.texp"));
  EXPECT_EQ(p.domain(), Domain::Funcs);
  EXPECT_EQ(p.store.equation(p.main).name, "T");
  EXPECT_EQ(formatExpr(p.store, *p.store.equation(p.main).body), R"(eps \/ open : W)");
  EXPECT_EQ(p.context.clauses.size(), 3U);
}

TEST(ParseSpec, SmallestProgram) {
  auto p = parseOrThrow("domain funcs; main M; M = eps;");
  EXPECT_TRUE(accepts(p, std::vector<Event>{}));
  EXPECT_FALSE(accepts(p, std::vector<Event>{testing::ev(R"({"event":"func_pre","name":"f","id":1,"args":[]})")}));
}

TEST(ParseSpec, CommentsAndEmptyListLiteral) {
  auto p = parseOrThrow(R"(-- leading comment
domain funcs; -- trailing comment
main M;
M = func_pre("f", _, []) : eps; -- calls with no arguments
)");
  EXPECT_TRUE(accepts(p, std::vector<Event>{testing::ev(R"({"event":"func_pre","name":"f","id":1,"args":[]})")}));
  EXPECT_FALSE(accepts(p, std::vector<Event>{testing::ev(R"({"event":"func_pre","name":"f","id":1,"args":[1]})")}));
}

TEST(ParseSpec, SharedVariableAcrossEquations) {
  // CB mentions `id`, which only AT's binder introduces.
  auto p = testing::sampleSpec("async.texp");
  EXPECT_TRUE(accepts(p, testing::sampleTrace("async_correct.jsonl")));
  auto wrongCallback = testing::sampleTrace("async_correct.jsonl");
  wrongCallback[1] = testing::ev(R"({"event":"cb_pre","name":"fs.open","id":41,"args":[null,9]})");
  EXPECT_EQ(replay(p, wrongCallback).violatedAt, 2U);
}

struct DiagCase {
  const char *name;
  const char *source;
  DiagnosticKind kind;
};

class Diagnostics : public ::testing::TestWithParam<DiagCase> {};

bool spanInside(const SourceSpan &span, const std::string &source) {
  std::vector<std::size_t> lineLengths;
  std::istringstream in(source);
  for (std::string line; std::getline(in, line);)
    lineLengths.push_back(line.size());
  if (lineLengths.empty())
    lineLengths.push_back(0);
  auto inside = [&](std::size_t line, std::size_t col) {
    return line >= 1 && line <= lineLengths.size() && col >= 1 && col <= lineLengths[line - 1] + 1;
  };
  bool ordered = span.startLine < span.endLine || (span.startLine == span.endLine && span.startCol <= span.endCol);
  return ordered && inside(span.startLine, span.startCol) && inside(span.endLine, span.endCol);
}

TEST_P(Diagnostics, ReportsKindWithSpanInsideSource) {
  const auto &c = GetParam();
  std::string src = c.source;
  auto r = parseSpec(src);
  EXPECT_FALSE(r.program);
  ASSERT_FALSE(r.diagnostics.empty());
  bool found = false;
  for (const auto &d : r.diagnostics) {
    EXPECT_TRUE(spanInside(d.span, src)) << toString(d);
    found = found || d.kind == c.kind;
  }
  EXPECT_TRUE(found) << toString(r.diagnostics.front());
}

INSTANTIATE_TEST_SUITE_P(
    ParseSpec, Diagnostics,
    ::testing::Values(
        DiagCase{"UndefinedType", "domain funcs; main M; M = var fd. write(fd) : eps; ", DiagnosticKind::UnknownTypeName},
        DiagCase{"MissingMain", "domain funcs; main M; N = eps;", DiagnosticKind::MissingMain},
        DiagCase{"UnknownEquation", "domain funcs;\nmain M;\nM = eps \\/ X;", DiagnosticKind::UnknownEquation},
        DiagCase{"Duplicate", "domain funcs; main M;\nM = eps;\nM = eps;", DiagnosticKind::DuplicateEquation},
        DiagCase{"UnknownDomain", "domain sockets; main M; M = eps;", DiagnosticKind::UnknownDomain},
        DiagCase{"Syntax", "domain funcs; main M;\nM = eps \\/ ;", DiagnosticKind::SyntaxError},
        DiagCase{"BadCharacter", "domain funcs; main M; M = eps # eps;", DiagnosticKind::SyntaxError},
        DiagCase{"UnterminatedString", "domain funcs; main M; M = func_pre(\"f, _, _) : eps;",
                 DiagnosticKind::SyntaxError},
        DiagCase{"FreeVariable", "domain messages; main M;\nM = p(x) : eps;\ntype p(v) matches msg(\"p\", v);",
                 DiagnosticKind::FreeVariable},
        DiagCase{"FreeVariableThroughEquation",
                 "domain messages; main M;\nM = p(1) : N;\nN = p(y) : eps;\ntype p(v) matches msg(\"p\", v);",
                 DiagnosticKind::FreeVariable},
        DiagCase{"RecursiveClause",
                 "domain messages; main M; M = p : eps;\ntype p matches q;\ntype q matches p;",
                 DiagnosticKind::RecursiveClause},
        DiagCase{"ShadowsBase", "domain messages; main M; M = eps;\ntype msg(a, b) matches msg(a, b);",
                 DiagnosticKind::InvalidClause},
        DiagCase{"UnboundHeadParameter", "domain messages; main M; M = eps;\ntype p(v) matches msg(\"p\", _);",
                 DiagnosticKind::InvalidClause},
        DiagCase{"UnguardedRecursion", "domain messages; main M;\nM = M \\/ p : eps;\ntype p matches msg(\"p\", _);",
                 DiagnosticKind::UnguardedRecursion},
        DiagCase{"UnguardedThroughNullableCat",
                 "domain messages; main M;\nM = (eps \\/ p : eps) . M;\ntype p matches msg(\"p\", _);",
                 DiagnosticKind::UnguardedRecursion}),
    [](const auto &info) { return std::string(info.param.name); });

TEST(ParseSpec, GuardedByNonNullableCatIsAccepted) {
  auto p = parseOrThrow(R"(domain messages; main M;
    M = eps \/ (p : eps) . M;
    type p matches msg("p", _);)");
  auto e = testing::ev(R"({"type":"p","payload":0})");
  EXPECT_TRUE(accepts(p, std::vector<Event>{e, e, e}));
}

TEST(ParseSpec, DiagnosticRendering) {
  auto r = parseSpec("domain funcs; main M;\nM = eps \\/ X;");
  ASSERT_EQ(r.diagnostics.size(), 1U);
  EXPECT_EQ(toString(r.diagnostics[0]), "2:12: error: UnknownEquation: unknown equation 'X'");
}

TEST(RoundTrip, FixturesAreFixpoints) {
  for (const auto &f : testing::fixtureCorpus())
    EXPECT_EQ(testing::roundTripMismatch(testing::sampleText(f.spec)), "") << f.spec;
  EXPECT_EQ(testing::roundTripMismatch(testing::sampleText("async_shim.texp")), "");
}

TEST(RoundTrip, EpsFormatsAsEps) {
  auto p = parseOrThrow("domain funcs; main M; M = eps;");
  EXPECT_EQ(formatExpr(p.store, p.mainNode), "M");
  EXPECT_EQ(formatExpr(p.store, *p.store.equation(p.main).body), "eps");
  EXPECT_EQ(formatSpec(p), "domain funcs;\nmain M;\n\nM = eps;\n");
}

TEST(RoundTrip, RandomSpecs) {
  testing::RandomSpecGen gen(7);
  for (int i = 0; i < 200; ++i) {
    auto src = gen.spec();
    EXPECT_EQ(testing::roundTripMismatch(src), "") << src;
  }
}

TEST(RoundTrip, OperatorMixWithBindersAndGuards) {
  const char *src = R"(domain messages; main M;
    M = var x. (p(x) : eps | q : (var y. p(y) : eps)) \/ (q : eps) /\ (q : eps . M);
    type p(v) matches msg("p", v) where v >= 0, v != 3;
    type q matches msg("q", [1, "two", null, true | _]);)";
  EXPECT_EQ(testing::roundTripMismatch(src), "");
}

} // namespace
} // namespace texp
