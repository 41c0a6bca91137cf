#pragma once

// Helpers shared by the unit tests and the acceptance runner: fixture
// loading, exhaustive trace generation, a random generator for binder-free
// specs and the spec round-trip check.

#include <filesystem>
#include <algorithm>
#include <cstddef>
#include <iterator>
#include <random>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "texp/texp.hpp"

namespace texp::testing {

inline std::filesystem::path samplesDir() { return TEXP_SAMPLES_DIR; }

inline std::string sampleText(const std::string &name) { return readFile(samplesDir() / name); }

inline SpecProgram sampleSpec(const std::string &name) { return loadSpec(samplesDir() / name); }

inline std::vector<Event> sampleTrace(const std::string &name) { return loadTrace(samplesDir() / name); }

inline SpecProgram parseOrThrow(std::string_view source) {
  auto r = parseSpec(source);
  if (!r.program) {
    std::string msg;
    for (const auto &d : r.diagnostics)
      msg += toString(d) + "\n";
    throw std::runtime_error("spec does not parse:\n" + msg + std::string(source));
  }
  return std::move(*r.program);
}

inline Event ev(std::string_view json) { return decodeEvent(json); }

/// A fixture spec with the traces recorded for it.
struct Fixture {
  std::string spec;
  std::vector<std::string> traces;
};

inline std::vector<Fixture> fixtureCorpus() {
  return {
      {"sync.texp",
       {"sync_empty.jsonl", "sync_open_close.jsonl", "sync_two_writes.jsonl", "sync_write_first.jsonl",
        "sync_write_after_close.jsonl", "sync_open_only.jsonl", "sync_alphabet.jsonl"}},
      {"parametric.texp", {"parametric_interleaved.jsonl", "parametric_unknown_fd.jsonl"}},
      {"async.texp", {"async_double_write.jsonl", "async_correct.jsonl"}},
      {"pingpong.texp",
       {"pingpong_stale.jsonl", "pingpong_prefix.jsonl", "pingpong_increasing.jsonl", "pingpong_equal.jsonl"}},
  };
}

/// Ground events for exhaustive checks, at most six per fixture.
inline std::vector<Event> fixtureAlphabet(const std::string &spec) {
  std::vector<std::string> raw;
  if (spec == "sync.texp") {
    raw = {R"({"event":"func_post","name":"fs.openSync","id":1,"args":["t","w"],"ret":9})",
           R"({"event":"func_post","name":"fs.writeSync","id":2,"args":[9,"x"],"ret":1})",
           R"({"event":"func_post","name":"fs.closeSync","id":3,"args":[9]})"};
  } else if (spec == "parametric.texp") {
    raw = {R"({"event":"func_post","name":"fs.openSync","id":1,"args":["a","w"],"ret":9})",
           R"({"event":"func_post","name":"fs.openSync","id":2,"args":["b","w"],"ret":10})",
           R"({"event":"func_post","name":"fs.writeSync","id":3,"args":[9,"x"],"ret":1})",
           R"({"event":"func_post","name":"fs.writeSync","id":4,"args":[10,"x"],"ret":1})",
           R"({"event":"func_post","name":"fs.closeSync","id":5,"args":[9]})",
           R"({"event":"func_post","name":"fs.closeSync","id":6,"args":[10]})"};
  } else if (spec == "async.texp") {
    raw = {R"({"event":"func_pre","name":"fs.open","id":42,"args":["t","w","<fn>"]})",
           R"({"event":"cb_pre","name":"fs.open","id":42,"args":[null,9]})",
           R"({"event":"func_pre","name":"fs.write","id":43,"args":[9,"x","<fn>"]})",
           R"({"event":"cb_pre","name":"fs.write","id":43,"args":[null,1,"x"]})",
           R"({"event":"func_pre","name":"fs.close","id":44,"args":[9,"<fn>"]})",
           R"({"event":"cb_pre","name":"fs.close","id":44,"args":[null]})"};
  } else if (spec == "pingpong.texp") {
    raw = {R"({"type":"ping","payload":1})", R"({"type":"pong","payload":2})", R"({"type":"ping","payload":3})",
           R"({"type":"pong","payload":3})", R"({"type":"ping","payload":2})", R"({"type":"pong","payload":4})"};
  } else {
    throw std::invalid_argument("no alphabet for " + spec);
  }
  std::vector<Event> out;
  for (const auto &r : raw)
    out.push_back(decodeEvent(r));
  return out;
}

/// Every word over {0..alphabetSize-1} of length at most maxLen, shortest
/// first.
inline std::vector<std::vector<std::size_t>> allWords(std::size_t alphabetSize, std::size_t maxLen) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::size_t levelStart = 0;
  for (std::size_t len = 1; len <= maxLen; ++len) {
    std::size_t levelEnd = out.size();
    for (std::size_t i = levelStart; i < levelEnd; ++i)
      for (std::size_t a = 0; a < alphabetSize; ++a) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    levelStart = levelEnd;
  }
  return out;
}

inline std::vector<Event> wordEvents(const std::vector<std::size_t> &word, const std::vector<Event> &alphabet) {
  std::vector<Event> out;
  for (std::size_t i : word)
    out.push_back(alphabet[i]);
  return out;
}

/// Three message events a, b, c used by the random specs.
inline const char *kRandomPreamble = "type a matches msg(\"a\", _);\n"
                                     "type b matches msg(\"b\", _);\n"
                                     "type c matches msg(\"c\", _);\n";

inline std::vector<Event> randomAlphabet() {
  return {decodeEvent(R"({"type":"a","payload":0})"), decodeEvent(R"({"type":"b","payload":0})"),
          decodeEvent(R"({"type":"c","payload":0})")};
}

/// Random binder-free equation systems over a, b and c. Operators are drawn
/// uniformly up to the depth limit; recursion only appears as the tail of a
/// prefix, so every generated system is guarded.
class RandomSpecGen {
public:
  explicit RandomSpecGen(std::uint32_t seed) : rng_(seed) {}

  /// Equations named `<prefix>0`, `<prefix>1`, ...; the first is the entry.
  std::string equations(const std::string &prefix, std::size_t maxDepth = 4) {
    std::size_t count = pick(2) + 1;
    std::string out;
    for (std::size_t i = 0; i < count; ++i)
      out += prefix + std::to_string(i) + " = " + expr(prefix, count, maxDepth) + ";\n";
    return out;
  }

  /// A complete spec whose main equation is `prefix0`.
  std::string spec(const std::string &prefix = "E", std::size_t maxDepth = 4) {
    return header(prefix + "0") + equations(prefix, maxDepth) + kRandomPreamble;
  }

  static std::string header(const std::string &main) { return "domain messages;\nmain " + main + ";\n"; }

private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::string event() { return std::string(1, static_cast<char>('a' + pick(3))); }

  std::string tail(const std::string &prefix, std::size_t count, std::size_t depth) {
    switch (pick(3)) {
    case 0:
      return prefix + std::to_string(pick(count));
    case 1:
      return "eps";
    default:
      return depth == 0 ? "eps" : "(" + expr(prefix, count, depth - 1) + ")";
    }
  }

  std::string expr(const std::string &prefix, std::size_t count, std::size_t depth) {
    static const char *kBinary[] = {" . ", " /\\ ", " \\/ ", " | "};
    std::size_t choice = depth == 0 ? pick(2) : pick(6);
    switch (choice) {
    case 0:
      return "eps";
    case 1:
      return event() + " : " + tail(prefix, count, depth == 0 ? 0 : depth - 1);
    default:
      return "(" + expr(prefix, count, depth - 1) + kBinary[choice - 2] + expr(prefix, count, depth - 1) + ")";
    }
  }

  std::mt19937 rng_;
};

/// The words of length at most maxLen that the spec accepts.
using Language = std::set<std::vector<std::size_t>>;

inline Language languageOf(const SpecProgram &program, std::span<const Event> alphabet, std::size_t maxLen) {
  auto words = enumerate(program, alphabet, maxLen);
  return {words.begin(), words.end()};
}

/// Two random equation systems A and B over a, b and c, combinable under a
/// binary operator.
struct SpecPair {
  std::string a;
  std::string b;

  [[nodiscard]] SpecProgram left() const { return parse(RandomSpecGen::header("A0") + a); }
  [[nodiscard]] SpecProgram right() const { return parse(RandomSpecGen::header("B0") + b); }
  [[nodiscard]] SpecProgram combined(const std::string &lhs, const std::string &op, const std::string &rhs) const {
    return parse(RandomSpecGen::header("M") + "M = " + lhs + " " + op + " " + rhs + ";\n" + a + b);
  }

private:
  static SpecProgram parse(const std::string &src) {
    auto r = parseSpec(src + kRandomPreamble);
    if (!r.program)
      throw std::runtime_error("spec does not parse:\n" + src);
    return std::move(*r.program);
  }
};

/// Checks that disjunction is union, conjunction is intersection and shuffle
/// is commutative on words up to maxLen. Returns the first broken law, or an
/// empty string.
inline std::string brokenLaw(const SpecPair &pair, std::span<const Event> alphabet, std::size_t maxLen) {
  Language la = languageOf(pair.left(), alphabet, maxLen);
  Language lb = languageOf(pair.right(), alphabet, maxLen);
  Language unionAB, interAB;
  std::set_union(la.begin(), la.end(), lb.begin(), lb.end(), std::inserter(unionAB, unionAB.end()));
  std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(), std::inserter(interAB, interAB.end()));
  if (languageOf(pair.combined("A0", "\\/", "B0"), alphabet, maxLen) != unionAB)
    return "disjunction is not union";
  if (languageOf(pair.combined("A0", "/\\", "B0"), alphabet, maxLen) != interAB)
    return "conjunction is not intersection";
  if (languageOf(pair.combined("A0", "|", "B0"), alphabet, maxLen) !=
      languageOf(pair.combined("B0", "|", "A0"), alphabet, maxLen))
    return "shuffle is not commutative";
  return {};
}

/// parse, format, parse again: the two programs must have the same domain,
/// main, clauses and equation graphs, and formatting must be a fixpoint.
inline std::string roundTripMismatch(std::string_view source) {
  auto first = parseSpec(source);
  if (!first.program)
    return "source does not parse";
  std::string text = formatSpec(*first.program);
  auto second = parseSpec(text);
  if (!second.program)
    return "formatted text does not parse:\n" + text;
  const auto &a = *first.program;
  const auto &b = *second.program;
  if (a.domain() != b.domain())
    return "domain differs";
  if (a.store.equation(a.main).name != b.store.equation(b.main).name)
    return "main differs";
  if (a.context.clauses != b.context.clauses)
    return "clauses differ";
  auto ea = a.declaredEquations();
  auto eb = b.declaredEquations();
  if (ea.size() != eb.size())
    return "equation count differs";
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const auto &x = a.store.equation(ea[i]);
    const auto &y = b.store.equation(eb[i]);
    if (x.name != y.name)
      return "equation order differs at " + x.name;
    if (!sameShape(a.store, *x.body, b.store, *y.body))
      return "equation " + x.name + " differs after round trip:\n" + text;
  }
  if (formatSpec(b) != text)
    return "format is not a fixpoint";
  return {};
}

} // namespace texp::testing
