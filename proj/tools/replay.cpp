// Offline checker: replays a JSONL trace against a .texp spec.
//
// Exit status: 0 when the trace is accepted or still a live prefix, 1 when
// it is violated, 2 on spec, trace or usage errors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "texp/oracle.hpp"
#include "texp/replay.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitError = 2;

int verdictExit(texp::ReplayReport::Verdict v) {
  return v == texp::ReplayReport::Verdict::Violated ? kExitViolated : kExitOk;
}

void printReport(const texp::ReplayReport &r, bool json) {
  if (json) {
    std::cout << texp::toJson(r).dump() << '\n';
    return;
  }
  std::cout << texp::toString(r.verdict);
  if (r.violatedAt)
    std::cout << " at event " << *r.violatedAt;
  std::cout << " (" << r.events << " events)\n";
}

// Verdict of the backtracking oracle, shaped like an engine report. The
// first violation is the shortest prefix that is no longer alive.
texp::ReplayReport oracleReport(const texp::SpecProgram &program, const std::vector<texp::Event> &trace,
                                std::size_t bound) {
  texp::NaiveOracle oracle(program, bound);
  texp::ReplayReport r;
  r.events = trace.size();
  std::span<const texp::Event> all(trace);
  for (std::size_t k = 1; k <= trace.size(); ++k) {
    if (!oracle.alive(all.first(k))) {
      r.verdict = texp::ReplayReport::Verdict::Violated;
      r.violatedAt = k;
      return r;
    }
  }
  r.verdict = oracle.accepts(all) ? texp::ReplayReport::Verdict::Accepted : texp::ReplayReport::Verdict::PrefixAlive;
  return r;
}

int runEnumerate(const texp::SpecProgram &program, const std::string &alphabetPath, std::size_t maxLen,
                 texp::MonitorOptions options, bool json) {
  auto alphabet = texp::loadTrace(alphabetPath);
  auto words = texp::enumerate(program, alphabet, maxLen, options);
  if (json) {
    std::cout << nlohmann::json(words).dump() << '\n';
    return kExitOk;
  }
  for (const auto &w : words) {
    nlohmann::json line = nlohmann::json::array();
    for (std::size_t i : w)
      line.push_back(texp::toJson(alphabet[i].payload));
    std::cout << line.dump() << '\n';
  }
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Replay a JSONL event trace against a trace-expression spec"};
  std::string specPath;
  std::optional<std::string> tracePath;
  bool useOracle = false;
  std::optional<std::string> alphabetPath;
  std::size_t maxLen = 4;
  std::size_t frontierCap = 4096;
  std::size_t oracleBound = texp::NaiveOracle::kDefaultBound;
  bool json = false;

  app.add_option("spec", specPath, "Specification file (.texp)")->required()->check(CLI::ExistingFile);
  app.add_option("trace", tracePath, "Trace file, one JSON event per line")->check(CLI::ExistingFile);
  app.add_flag("--oracle", useOracle, "Decide with the backtracking reference checker instead of the monitor");
  app.add_option("--oracle-bound", oracleBound, "Longest trace the reference checker accepts")
      ->check(CLI::PositiveNumber);
  app.add_option("--enumerate", alphabetPath, "List accepted traces over the events of this JSONL file")
      ->check(CLI::ExistingFile);
  app.add_option("--max-len", maxLen, "Longest trace to enumerate")
      ->check(CLI::Range(std::size_t{0}, texp::kMaxEnumerationLength));
  app.add_option("--frontier-cap", frontierCap, "Largest frontier before the monitor gives up")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Print the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  if (!tracePath && !alphabetPath) {
    std::cerr << "replay: a trace file is required unless --enumerate is given\n";
    return kExitError;
  }

  texp::MonitorOptions options;
  options.frontierCap = frontierCap;
  try {
    auto program = texp::loadSpec(specPath);
    if (alphabetPath)
      return runEnumerate(program, *alphabetPath, maxLen, options, json);
    auto trace = texp::loadTrace(*tracePath);
    auto report = useOracle ? oracleReport(program, trace, oracleBound) : texp::replay(program, trace, options);
    printReport(report, json);
    return verdictExit(report.verdict);
  } catch (const texp::LoadError &e) {
    std::cerr << e.what();
    if (std::string_view(e.what()).back() != '\n')
      std::cerr << '\n';
  } catch (const texp::FrontierOverflow &e) {
    std::cerr << "replay: " << e.what() << '\n';
  } catch (const texp::BoundExceeded &e) {
    std::cerr << "replay: " << e.what() << '\n';
  } catch (const texp::UnknownTypeName &e) {
    std::cerr << "replay: " << e.what() << '\n';
  }
  return kExitError;
}
