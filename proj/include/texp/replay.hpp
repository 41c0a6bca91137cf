#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "texp/domains.hpp"
#include "texp/parser.hpp"
#include "texp/semantics.hpp"

namespace texp {

/// A spec or trace file that could not be loaded; carries rendered
/// diagnostics, one per line.
class LoadError : public std::runtime_error {
public:
  explicit LoadError(const std::string &what) : std::runtime_error(what) {}
};

inline std::string readFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw LoadError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SpecProgram loadSpec(const std::filesystem::path &path) {
  auto result = parseSpec(readFile(path));
  if (!result.program) {
    std::string msg;
    for (const auto &d : result.diagnostics)
      msg += path.string() + ":" + toString(d) + "\n";
    throw LoadError(msg);
  }
  return std::move(*result.program);
}

/// One JSON event per line; blank lines are skipped.
inline std::vector<Event> parseTrace(std::string_view text, const std::string &origin = "<trace>") {
  std::vector<Event> out;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineNo;
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(decodeEvent(line));
      } catch (const DecodeError &e) {
        throw LoadError(origin + ":" + std::to_string(lineNo) + ": " + e.what());
      }
    }
    start = end + 1;
  }
  return out;
}

inline std::vector<Event> loadTrace(const std::filesystem::path &path) {
  return parseTrace(readFile(path), path.string());
}

struct ReplayReport {
  enum class Verdict : std::uint8_t { Accepted, PrefixAlive, Violated };
  Verdict verdict = Verdict::Accepted;
  /// 1-based index of the first rejected event when violated.
  std::optional<std::size_t> violatedAt;
  std::size_t events = 0;
  /// Frontier size after each event.
  std::vector<std::size_t> frontierSizes;

  friend bool operator==(const ReplayReport &, const ReplayReport &) = default;
};

inline std::string_view toString(ReplayReport::Verdict v) {
  switch (v) {
  case ReplayReport::Verdict::Accepted:
    return "accepted";
  case ReplayReport::Verdict::PrefixAlive:
    return "prefixAlive";
  case ReplayReport::Verdict::Violated:
    return "violated";
  }
  return "?";
}

inline nlohmann::json toJson(const ReplayReport &r) {
  nlohmann::json j;
  j["verdict"] = std::string(toString(r.verdict));
  if (r.violatedAt)
    j["atIndex"] = *r.violatedAt;
  j["events"] = r.events;
  j["frontierSizes"] = r.frontierSizes;
  return j;
}

/// Replays a whole trace. Keeps stepping after a violation so the report
/// has one frontier size per event.
inline ReplayReport replay(const SpecProgram &program, std::span<const Event> trace, MonitorOptions options = {}) {
  Monitor monitor(program, options);
  auto state = monitor.initial();
  ReplayReport report;
  for (const auto &e : trace) {
    state = monitor.step(state, e);
    report.frontierSizes.push_back(state.frontier.size());
  }
  report.events = trace.size();
  if (!state.alive()) {
    report.verdict = ReplayReport::Verdict::Violated;
    report.violatedAt = state.violatedAt;
  } else {
    report.verdict = monitor.acceptsFinal(state) ? ReplayReport::Verdict::Accepted : ReplayReport::Verdict::PrefixAlive;
  }
  return report;
}

inline ReplayReport replayFiles(const std::filesystem::path &specPath, const std::filesystem::path &tracePath,
                                MonitorOptions options = {}) {
  auto program = loadSpec(specPath);
  auto trace = loadTrace(tracePath);
  return replay(program, trace, options);
}

/// Per-event verdicts: true where the monitor reports an error.
inline std::vector<bool> errorSequence(const SpecProgram &program, std::span<const Event> trace,
                                       MonitorOptions options = {}) {
  Monitor monitor(program, options);
  auto state = monitor.initial();
  std::vector<bool> out;
  for (const auto &e : trace) {
    state = monitor.step(state, e);
    out.push_back(!state.alive());
  }
  return out;
}

inline constexpr std::size_t kMaxEnumerationLength = 6;

/// All traces over `alphabet` of length at most maxLen accepted by the
/// monitor, as sequences of alphabet indices, ordered by length and then
/// lexicographically.
inline std::vector<std::vector<std::size_t>> enumerate(const SpecProgram &program, std::span<const Event> alphabet,
                                                       std::size_t maxLen, MonitorOptions options = {}) {
  if (maxLen > kMaxEnumerationLength)
    throw std::invalid_argument("enumeration length is limited to " + std::to_string(kMaxEnumerationLength));
  Monitor monitor(program, options);
  struct Item {
    std::vector<std::size_t> word;
    MonitorState state;
  };
  std::vector<std::vector<std::size_t>> accepted;
  std::vector<Item> level{{{}, monitor.initial()}};
  for (std::size_t len = 0;; ++len) {
    for (const auto &item : level)
      if (monitor.acceptsFinal(item.state))
        accepted.push_back(item.word);
    if (len == maxLen)
      break;
    std::vector<Item> next;
    for (const auto &item : level) {
      for (std::size_t i = 0; i < alphabet.size(); ++i) {
        auto s = monitor.step(item.state, alphabet[i]);
        if (!s.alive())
          continue;
        auto w = item.word;
        w.push_back(i);
        next.push_back({std::move(w), std::move(s)});
      }
    }
    level = std::move(next);
  }
  return accepted;
}

} // namespace texp
