#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "texp/domains.hpp"
#include "texp/epsilon.hpp"
#include "texp/program.hpp"

namespace texp {

/// 1-based, inclusive source range.
struct SourceSpan {
  int startLine = 1;
  int startCol = 1;
  int endLine = 1;
  int endCol = 1;
  friend bool operator==(const SourceSpan &, const SourceSpan &) = default;
};

enum class DiagnosticKind : std::uint8_t {
  SyntaxError,
  UnknownDomain,
  MissingMain,
  UnknownEquation,
  DuplicateEquation,
  UnknownTypeName,
  InvalidClause,
  RecursiveClause,
  FreeVariable,
  UnguardedRecursion,
};

inline std::string_view toString(DiagnosticKind k) {
  switch (k) {
  case DiagnosticKind::SyntaxError:
    return "SyntaxError";
  case DiagnosticKind::UnknownDomain:
    return "UnknownDomain";
  case DiagnosticKind::MissingMain:
    return "MissingMain";
  case DiagnosticKind::UnknownEquation:
    return "UnknownEquation";
  case DiagnosticKind::DuplicateEquation:
    return "DuplicateEquation";
  case DiagnosticKind::UnknownTypeName:
    return "UnknownTypeName";
  case DiagnosticKind::InvalidClause:
    return "InvalidClause";
  case DiagnosticKind::RecursiveClause:
    return "RecursiveClause";
  case DiagnosticKind::FreeVariable:
    return "FreeVariable";
  case DiagnosticKind::UnguardedRecursion:
    return "UnguardedRecursion";
  }
  return "?";
}

struct ParseDiagnostic {
  enum class Severity : std::uint8_t { Error, Warning };
  Severity severity = Severity::Error;
  DiagnosticKind kind = DiagnosticKind::SyntaxError;
  SourceSpan span;
  std::string message;
};

inline std::string toString(const ParseDiagnostic &d) {
  return std::to_string(d.span.startLine) + ":" + std::to_string(d.span.startCol) + ": " +
         (d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning") + ": " + std::string(toString(d.kind)) +
         ": " + d.message;
}

struct ParseResult {
  std::optional<SpecProgram> program;
  std::vector<ParseDiagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return program.has_value(); }
};

namespace detail {

enum class Tok : std::uint8_t {
  Ident,
  Number,
  String,
  Semi,
  Equals,
  Colon,
  Dot,
  And,     // /\ (intersection)
  Or,      // \/ (union)
  Bar,     // |
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Cmp,     // == != > >= < <=
  End,
  Invalid,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run(std::vector<ParseDiagnostic> &diags) {
    std::vector<Token> out;
    for (;;) {
      skipSpaceAndComments();
      Token t = next(diags);
      out.push_back(t);
      if (t.kind == Tok::End)
        break;
    }
    return out;
  }

private:
  [[nodiscard]] char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skipSpaceAndComments() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && peek() != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  Token next(std::vector<ParseDiagnostic> &diags) {
    Token t;
    int line = line_, col = col_;
    std::size_t start = pos_;
    auto finish = [&](Tok k) {
      t.kind = k;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.span = SourceSpan{line, col, line_, std::max(col, col_ - 1)};
      return t;
    };
    if (pos_ >= src_.size())
      return finish(Tok::End);

    char c = peek();
    if (isIdentifierStart(c)) {
      while (isIdentifierChar(peek()))
        advance();
      return finish(Tok::Ident);
    }
    if ((c >= '0' && c <= '9') || (c == '-' && peek(1) >= '0' && peek(1) <= '9')) {
      if (c == '-')
        advance();
      while (std::isdigit(static_cast<unsigned char>(peek())))
        advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek())))
          advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        std::size_t k = 1;
        if (peek(k) == '+' || peek(k) == '-')
          ++k;
        if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
          for (std::size_t i = 0; i < k; ++i)
            advance();
          while (std::isdigit(static_cast<unsigned char>(peek())))
            advance();
        }
      }
      return finish(Tok::Number);
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && peek() != '"' && peek() != '\n') {
        if (peek() == '\\' && pos_ + 1 < src_.size())
          advance();
        advance();
      }
      if (peek() != '"') {
        auto bad = finish(Tok::Invalid);
        diags.push_back({ParseDiagnostic::Severity::Error, DiagnosticKind::SyntaxError, bad.span,
                         "unterminated string literal"});
        return bad;
      }
      advance();
      return finish(Tok::String);
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    auto take = [&](int n, Tok k) {
      for (int i = 0; i < n; ++i)
        advance();
      return finish(k);
    };
    if (two('/', '\\'))
      return take(2, Tok::And);
    if (two('\\', '/'))
      return take(2, Tok::Or);
    if (two('=', '=') || two('!', '=') || two('>', '=') || two('<', '='))
      return take(2, Tok::Cmp);
    switch (c) {
    case ';':
      return take(1, Tok::Semi);
    case '=':
      return take(1, Tok::Equals);
    case ':':
      return take(1, Tok::Colon);
    case '.':
      return take(1, Tok::Dot);
    case '|':
      return take(1, Tok::Bar);
    case '(':
      return take(1, Tok::LParen);
    case ')':
      return take(1, Tok::RParen);
    case '[':
      return take(1, Tok::LBracket);
    case ']':
      return take(1, Tok::RBracket);
    case ',':
      return take(1, Tok::Comma);
    case '>':
    case '<':
      return take(1, Tok::Cmp);
    default:
      break;
    }
    advance();
    auto bad = finish(Tok::Invalid);
    diags.push_back({ParseDiagnostic::Severity::Error, DiagnosticKind::SyntaxError, bad.span,
                     "unexpected character '" + bad.text + "'"});
    return bad;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline bool isKeyword(std::string_view s) {
  return s == "domain" || s == "main" || s == "type" || s == "matches" || s == "where" || s == "eps" || s == "var" ||
         s == "true" || s == "false" || s == "null";
}

struct SyntaxError {
  SourceSpan span;
  std::string message;
};

struct TypeUse {
  EventType type;
  SourceSpan span;
};

struct ClauseDecl {
  TypeClause clause;
  SourceSpan span;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, std::vector<ParseDiagnostic> &diags)
      : toks_(std::move(tokens)), diags_(diags) {}

  ParseResult run() {
    SpecProgram prog;
    store_ = &prog.store;

    std::string domainText, mainText;
    SourceSpan domainSpan, mainSpan;
    try {
      expectKeyword("domain");
      domainSpan = peekTok().span;
      domainText = expectName("domain name");
      expect(Tok::Semi, "';'");
      expectKeyword("main");
      mainSpan = peekTok().span;
      mainText = expectName("main equation name");
      expect(Tok::Semi, "';'");
    } catch (const SyntaxError &e) {
      error(DiagnosticKind::SyntaxError, e.span, e.message);
      return {std::nullopt, std::move(diags_)};
    }

    // Declare equations in source order so that references to later
    // equations do not reorder them.
    for (std::size_t i = pos_; i + 1 < toks_.size(); ++i)
      if (toks_[i - 1].kind == Tok::Semi && toks_[i].kind == Tok::Ident && toks_[i + 1].kind == Tok::Equals)
        store_->declareEquation(toks_[i].text);

    while (peekTok().kind != Tok::End) {
      try {
        if (isIdent("type"))
          parseClause();
        else
          parseEquation();
      } catch (const SyntaxError &e) {
        error(DiagnosticKind::SyntaxError, e.span, e.message);
        recover();
      }
    }
    if (hasErrors())
      return {std::nullopt, std::move(diags_)};

    auto domain = domainFromName(domainText);
    if (!domain)
      error(DiagnosticKind::UnknownDomain, domainSpan, "unknown event domain '" + domainText + "'");
    prog.context.domain = domain.value_or(Domain::Funcs);

    for (auto &c : clauses_)
      prog.context.clauses.push_back(c.clause);

    for (const auto &[name, span] : firstUse_) {
      auto eq = store_->findEquation(name);
      if (!eq || !store_->equation(*eq).body)
        error(DiagnosticKind::UnknownEquation, span, "unknown equation '" + name + "'");
    }
    auto mainEq = store_->findEquation(mainText);
    if (!mainEq || !store_->equation(*mainEq).body) {
      error(DiagnosticKind::MissingMain, mainSpan, "main equation '" + mainText + "' is not defined");
      return {std::nullopt, std::move(diags_)};
    }
    prog.main = *mainEq;
    prog.mainNode = store_->ref(*mainEq);
    if (hasErrors())
      return {std::nullopt, std::move(diags_)};

    checkClauses(prog.context);
    for (const auto &use : typeUses_)
      checkTypeUse(prog.context, use);
    if (hasErrors())
      return {std::nullopt, std::move(diags_)};

    store_->computeEquationFreeVars();
    const VarSet &fv = store_->freeVars(prog.mainNode);
    if (!fv.empty()) {
      std::string names;
      for (const auto &x : fv)
        names += (names.empty() ? "" : ", ") + x;
      error(DiagnosticKind::FreeVariable, definitionSpan_[mainText],
            "main expression has free variables after unfolding: " + names);
    }
    checkGuarded();
    if (hasErrors())
      return {std::nullopt, std::move(diags_)};
    return {std::move(prog), std::move(diags_)};
  }

private:
  // Token helpers.
  const Token &peekTok(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token &take() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size())
      ++pos_;
    return t;
  }
  [[nodiscard]] bool isIdent(std::string_view s, std::size_t k = 0) const {
    return peekTok(k).kind == Tok::Ident && peekTok(k).text == s;
  }
  [[noreturn]] void fail(const std::string &what) const {
    const Token &t = peekTok();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError{t.span, "expected " + what + ", found " + found};
  }
  const Token &expect(Tok k, const std::string &what) {
    if (peekTok().kind != k)
      fail(what);
    return take();
  }
  void expectKeyword(std::string_view kw) {
    if (!isIdent(kw))
      fail("'" + std::string(kw) + "'");
    take();
  }
  std::string expectName(const std::string &what) {
    const Token &t = peekTok();
    if (t.kind != Tok::Ident || isKeyword(t.text) || t.text == "_")
      fail(what);
    return take().text;
  }
  void recover() {
    while (peekTok().kind != Tok::End && peekTok().kind != Tok::Semi)
      take();
    if (peekTok().kind == Tok::Semi)
      take();
  }
  void error(DiagnosticKind kind, SourceSpan span, std::string msg) {
    diags_.push_back({ParseDiagnostic::Severity::Error, kind, span, std::move(msg)});
  }
  [[nodiscard]] bool hasErrors() const {
    return std::any_of(diags_.begin(), diags_.end(),
                       [](const auto &d) { return d.severity == ParseDiagnostic::Severity::Error; });
  }
  static SourceSpan join(SourceSpan a, SourceSpan b) { return {a.startLine, a.startCol, b.endLine, b.endCol}; }
  [[nodiscard]] SourceSpan prevSpan() const { return toks_[pos_ == 0 ? 0 : pos_ - 1].span; }

  // Items.
  void parseEquation() {
    SourceSpan start = peekTok().span;
    std::string name = expectName("equation name or 'type'");
    expect(Tok::Equals, "'='");
    NodeId body = parseExpr();
    expect(Tok::Semi, "';'");
    EquationId eq = store_->declareEquation(name);
    if (store_->equation(eq).body) {
      error(DiagnosticKind::DuplicateEquation, start, "equation '" + name + "' is defined more than once");
      return;
    }
    store_->defineEquation(eq, body);
    definitionSpan_[name] = start;
    definitionOrder_.push_back(name);
  }

  void parseClause() {
    SourceSpan start = peekTok().span;
    take(); // type
    TypeClause clause;
    clause.head = parseTypeHead();
    expectKeyword("matches");
    bodySpans_.push_back(peekTok().span);
    clause.body = parseTypeHead();
    if (isIdent("where")) {
      take();
      clause.guards.push_back(parseGuard());
      while (peekTok().kind == Tok::Comma) {
        take();
        clause.guards.push_back(parseGuard());
      }
    }
    expect(Tok::Semi, "';'");
    clauses_.push_back({std::move(clause), join(start, prevSpan())});
  }

  Guard parseGuard() {
    Guard g;
    g.lhs = parseOperand();
    const Token &op = expect(Tok::Cmp, "comparison operator");
    if (op.text == "==")
      g.op = Guard::Cmp::Eq;
    else if (op.text == "!=")
      g.op = Guard::Cmp::Ne;
    else if (op.text == ">")
      g.op = Guard::Cmp::Gt;
    else if (op.text == ">=")
      g.op = Guard::Cmp::Ge;
    else if (op.text == "<")
      g.op = Guard::Cmp::Lt;
    else
      g.op = Guard::Cmp::Le;
    g.rhs = parseOperand();
    return g;
  }

  Guard::Operand parseOperand() {
    Pattern p = parsePattern();
    if (const auto *v = p.as<VarPattern>())
      return v->name;
    if (const auto *l = p.as<LiteralPattern>())
      return l->value;
    throw SyntaxError{prevSpan(), "guard operands are variables or literals"};
  }

  // Expressions, lowest to highest precedence: | \/ /\ . :
  NodeId parseExpr() { return parseShuffle(); }

  NodeId parseShuffle() {
    NodeId l = parseOrExpr();
    while (peekTok().kind == Tok::Bar) {
      take();
      l = store_->shuffle(l, parseOrExpr());
    }
    return l;
  }

  NodeId parseOrExpr() {
    NodeId l = parseAndExpr();
    while (peekTok().kind == Tok::Or) {
      take();
      l = store_->orOf(l, parseAndExpr());
    }
    return l;
  }

  NodeId parseAndExpr() {
    NodeId l = parseCat();
    while (peekTok().kind == Tok::And) {
      take();
      l = store_->andOf(l, parseCat());
    }
    return l;
  }

  NodeId parseCat() {
    NodeId l = parseUnary();
    while (peekTok().kind == Tok::Dot) {
      take();
      l = store_->cat(l, parseUnary());
    }
    return l;
  }

  NodeId parseUnary() {
    const Token &t = peekTok();
    if (t.kind == Tok::LParen) {
      take();
      NodeId inner = parseExpr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind != Tok::Ident)
      fail("trace expression");
    if (t.text == "eps") {
      take();
      return store_->eps();
    }
    if (t.text == "var") {
      take();
      std::string x = expectVar();
      expect(Tok::Dot, "'.' after binder variable");
      return store_->binder(x, parseExpr());
    }
    if (isKeyword(t.text) || t.text == "_")
      fail("trace expression");
    // NAME( ... ) or NAME ':' is an event type prefix; a bare NAME is an
    // equation reference.
    if (peekTok(1).kind == Tok::LParen || peekTok(1).kind == Tok::Colon) {
      SourceSpan start = t.span;
      EventType type = parseTypeHead();
      typeUses_.push_back({type, join(start, prevSpan())});
      expect(Tok::Colon, "':' after event type");
      NodeId tail = parseUnary();
      return store_->prefix(type, tail);
    }
    SourceSpan span = t.span;
    std::string name = take().text;
    firstUse_.emplace(name, span);
    return store_->ref(store_->declareEquation(name));
  }

  std::string expectVar() {
    const Token &t = peekTok();
    if (t.kind != Tok::Ident || isKeyword(t.text) || t.text == "_")
      fail("variable name");
    return take().text;
  }

  EventType parseTypeHead() {
    EventType type;
    type.head = expectName("event type name");
    if (peekTok().kind == Tok::LParen) {
      take();
      type.args.push_back(parsePattern());
      while (peekTok().kind == Tok::Comma) {
        take();
        type.args.push_back(parsePattern());
      }
      expect(Tok::RParen, "')'");
    }
    return type;
  }

  Pattern parsePattern() {
    const Token &t = peekTok();
    switch (t.kind) {
    case Tok::Number: {
      std::string text = take().text;
      double d = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
      if (ec != std::errc{})
        throw SyntaxError{prevSpan(), "invalid number '" + text + "'"};
      return Pattern::literal(Value{d});
    }
    case Tok::String: {
      std::string text = take().text;
      try {
        return Pattern::literal(Value{nlohmann::json::parse(text).get<std::string>()});
      } catch (const nlohmann::json::exception &) {
        throw SyntaxError{prevSpan(), "invalid string literal " + text};
      }
    }
    case Tok::LBracket: {
      take();
      std::vector<Pattern> items;
      std::optional<Pattern> tail;
      if (peekTok().kind == Tok::RBracket) {
        take();
        return Pattern::literal(Value{Value::Array{}});
      }
      items.push_back(parsePattern());
      while (peekTok().kind == Tok::Comma) {
        take();
        items.push_back(parsePattern());
      }
      if (peekTok().kind == Tok::Bar) {
        take();
        tail = parsePattern();
      }
      expect(Tok::RBracket, "']'");
      return Pattern::list(std::move(items), std::move(tail));
    }
    case Tok::Ident: {
      std::string text = t.text;
      if (text == "_") {
        take();
        return Pattern::wildcard();
      }
      if (text == "true" || text == "false") {
        take();
        return Pattern::literal(Value{text == "true"});
      }
      if (text == "null") {
        take();
        return Pattern::literal(Value{});
      }
      if (isKeyword(text))
        fail("pattern");
      take();
      return Pattern::var(text);
    }
    default:
      fail("pattern");
    }
  }

  // Load-time checks.
  void checkTypeUse(const MatchContext &ctx, const TypeUse &use) {
    const auto &t = use.type;
    if (isBaseType(ctx.domain, t.head, t.args.size()) || ctx.hasDerived(t.head, t.args.size()))
      return;
    error(DiagnosticKind::UnknownTypeName, use.span,
          "unknown event type " + t.head + "/" + std::to_string(t.args.size()) + " in domain " +
              std::string(domainName(ctx.domain)));
  }

  void checkClauses(const MatchContext &ctx) {
    using Key = std::pair<std::string, std::size_t>;
    std::map<Key, std::set<Key>> deps;
    std::map<Key, SourceSpan> spanOf;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      const auto &[c, span] = clauses_[i];
      Key key{c.head.head, c.head.args.size()};
      spanOf.emplace(key, span);
      if (isBaseHead(ctx.domain, c.head.head)) {
        error(DiagnosticKind::InvalidClause, span, "clause head '" + c.head.head + "' shadows a base event type");
        continue;
      }
      std::set<VarName> params;
      for (const auto &p : c.head.args) {
        if (p.as<Wildcard>())
          continue;
        const auto *v = p.as<VarPattern>();
        if (!v) {
          error(DiagnosticKind::InvalidClause, span, "clause head parameters must be variables or '_'");
          continue;
        }
        if (!params.insert(v->name).second)
          error(DiagnosticKind::InvalidClause, span, "clause head repeats parameter " + v->name);
      }
      VarSet bodyVars = varsOf(c.body);
      std::set<VarName> guardVars;
      for (const auto &g : c.guards)
        for (const auto *o : {&g.lhs, &g.rhs})
          if (const auto *x = std::get_if<VarName>(o))
            guardVars.insert(*x);
      for (const auto &x : params)
        if (!bodyVars.count(x) && !guardVars.count(x))
          error(DiagnosticKind::InvalidClause, span, "head parameter " + x + " occurs neither in the body nor in a guard");
      for (const auto &x : guardVars)
        if (!bodyVars.count(x) && !params.count(x))
          error(DiagnosticKind::InvalidClause, span, "guard variable " + x + " is not bound by the clause");
      const auto &b = c.body;
      if (isBaseType(ctx.domain, b.head, b.args.size()))
        continue;
      if (!ctx.hasDerived(b.head, b.args.size())) {
        error(DiagnosticKind::UnknownTypeName, bodySpans_[i],
              "unknown event type " + b.head + "/" + std::to_string(b.args.size()) + " in clause body");
        continue;
      }
      deps[key].insert(Key{b.head, b.args.size()});
    }
    // Clause dependency graph must be acyclic.
    std::map<Key, int> color;
    std::function<bool(const Key &)> cyclic = [&](const Key &k) {
      int &c = color[k];
      if (c == 1)
        return true;
      if (c == 2)
        return false;
      c = 1;
      for (const auto &d : deps[k])
        if (cyclic(d))
          return true;
      color[k] = 2;
      return false;
    };
    for (const auto &[k, _] : deps) {
      if (color[k] == 0 && cyclic(k)) {
        error(DiagnosticKind::RecursiveClause, spanOf[k],
              "event type " + k.first + "/" + std::to_string(k.second) + " is defined recursively");
        break;
      }
    }
  }

  /// Every cycle must pass through a prefix guard, or through the right
  /// operand of a concatenation whose left operand is not nullable;
  /// otherwise a single step could have infinitely many successors.
  void checkGuarded() {
    EpsilonCache eps;
    std::vector<std::uint8_t> color(store_->nodeCount(), 0);
    std::optional<std::string> culprit;
    std::function<bool(NodeId)> visit = [&](NodeId n) -> bool {
      auto &c = color[n.index];
      if (c == 1) {
        return true;
      }
      if (c == 2)
        return false;
      c = 1;
      std::vector<NodeId> next;
      switch (store_->op(n)) {
      case Op::Eps:
      case Op::Prefix:
        break;
      case Op::Cat:
        next.push_back(store_->left(n));
        if (eps(*store_, store_->left(n)))
          next.push_back(store_->right(n));
        break;
      case Op::And:
      case Op::Or:
      case Op::Shuffle:
        next = {store_->left(n), store_->right(n)};
        break;
      case Op::Binder:
        next.push_back(store_->binderBody(n));
        break;
      case Op::Ref:
        next.push_back(*store_->equation(store_->refEquation(n)).body);
        break;
      }
      for (NodeId m : next) {
        if (visit(m)) {
          if (!culprit && store_->op(n) == Op::Ref)
            culprit = store_->equation(store_->refEquation(n)).name;
          color[n.index] = 2;
          return true;
        }
      }
      color[n.index] = 2;
      return false;
    };
    // Each equation body is also reachable through its prefix tails, so
    // start from every declared equation.
    for (const auto &name : definitionOrder_) {
      NodeId r = store_->ref(*store_->findEquation(name));
      if (r.index >= color.size())
        color.resize(store_->nodeCount(), 0);
      if (visit(r)) {
        std::string who = culprit.value_or(name);
        error(DiagnosticKind::UnguardedRecursion, definitionSpan_.count(who) ? definitionSpan_[who] : definitionSpan_[name],
              "recursion through equation '" + who + "' is not guarded by an event prefix");
        return;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseDiagnostic> &diags_;
  TermStore *store_ = nullptr;
  std::map<std::string, SourceSpan> firstUse_;
  std::map<std::string, SourceSpan> definitionSpan_;
  std::vector<std::string> definitionOrder_;
  std::vector<TypeUse> typeUses_;
  std::vector<ClauseDecl> clauses_;
  std::vector<SourceSpan> bodySpans_;
};

} // namespace detail

/// Parses a `.texp` source into a program, or returns diagnostics.
///
///   program  := "domain" NAME ";" "main" NAME ";" (equation | clause)*
///   equation := NAME "=" expr ";"
///   clause   := "type" typehead "matches" typehead ("where" guard ("," guard)*)? ";"
///
/// Operators from tightest to loosest: `:` (right associative), `.`, `/\`,
/// `\/`, `|`; binary operators associate left and `var x.` extends as far
/// right as possible. `--` starts a comment.
inline ParseResult parseSpec(std::string_view source) {
  std::vector<ParseDiagnostic> diags;
  auto tokens = detail::Lexer(source).run(diags);
  if (!diags.empty())
    return {std::nullopt, std::move(diags)};
  return detail::Parser(std::move(tokens), diags).run();
}

} // namespace texp
