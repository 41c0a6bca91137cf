#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "texp/domains.hpp"
#include "texp/semantics.hpp"

namespace texp {

struct ServiceConfig {
  int port = 8080;
  std::filesystem::path specPath;
  std::size_t frontierCap = 4096;
  std::optional<std::filesystem::path> logPath;
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

inline constexpr std::string_view kDefaultSession = "default";

inline bool isValidSessionId(std::string_view id) {
  if (id.empty() || id.size() > 128)
    return false;
  for (char c : id)
    if (!(isIdentifierChar(c) || c == '-' || c == '.' || c == '~'))
      return false;
  return true;
}

/// Monitoring sessions over one loaded program.
///
/// Each session is a single-threaded state machine guarded by its own
/// mutex; the session table is guarded separately, so distinct sessions
/// step in parallel. Violations are sticky: once a session reports an
/// error it keeps doing so until reset.
class MonitorService {
public:
  explicit MonitorService(SpecProgram program, std::size_t frontierCap = 4096,
                          std::optional<std::filesystem::path> logPath = std::nullopt)
      : program_(std::move(program)), options_{frontierCap, true} {
    if (logPath) {
      log_.open(*logPath, std::ios::app);
      if (!log_)
        throw std::runtime_error("cannot open log file " + logPath->string());
    }
    sessions_.emplace(std::string(kDefaultSession), freshSession());
  }

  /// POST /: one event. The session is the event's top-level "session"
  /// field, else `sessionHint`, else the default session.
  HttpResponse handleEvent(std::string_view body, std::optional<std::string> sessionHint = std::nullopt) {
    Event event;
    try {
      event = decodeEvent(body);
    } catch (const DecodeError &e) {
      return failure(400, e.what());
    }
    std::string id = sessionHint.value_or(std::string(kDefaultSession));
    if (const Value *s = event.payload.find("session")) {
      if (!s->isText())
        return failure(400, "session must be a string");
      id = s->asText();
    }
    if (!isValidSessionId(id))
      return failure(400, "invalid session id");

    auto session = getOrCreate(id);
    std::lock_guard lock(session->mutex);
    try {
      session->state = session->monitor.step(session->state, event);
    } catch (const FrontierOverflow &e) {
      return failure(500, e.what());
    } catch (const UnknownTypeName &e) {
      return failure(500, e.what());
    }
    bool error = !session->state.alive();
    writeLog(id, event, error);
    return {200, error ? R"({"error":true})" : R"({"error":false})"};
  }

  /// POST /final: whether the events so far form a complete word.
  HttpResponse handleFinal(const std::string &id) {
    auto session = find(id);
    if (!session)
      return failure(404, "unknown session");
    std::lock_guard lock(session->mutex);
    nlohmann::json j;
    j["accepted"] = session->monitor.acceptsFinal(session->state);
    j["events"] = session->state.eventCount;
    return {200, j.dump()};
  }

  /// POST /reset: reinitializes the session, creating it when needed.
  HttpResponse handleReset(const std::string &id) {
    if (!isValidSessionId(id))
      return failure(400, "invalid session id");
    auto fresh = freshSession();
    {
      std::unique_lock lock(tableMutex_);
      sessions_[id] = std::move(fresh);
    }
    return {200, R"({"reset":true})"};
  }

  [[nodiscard]] bool hasSession(const std::string &id) const { return find(id) != nullptr; }

private:
  struct Session {
    Session(const SpecProgram &program, MonitorOptions options) : monitor(program, options), state(monitor.initial()) {}
    std::mutex mutex;
    Monitor monitor;
    MonitorState state;
  };

  std::shared_ptr<Session> freshSession() const { return std::make_shared<Session>(program_, options_); }

  std::shared_ptr<Session> find(const std::string &id) const {
    std::shared_lock lock(tableMutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  std::shared_ptr<Session> getOrCreate(const std::string &id) {
    if (auto s = find(id))
      return s;
    auto fresh = freshSession();
    std::unique_lock lock(tableMutex_);
    return sessions_.try_emplace(id, std::move(fresh)).first->second;
  }

  static HttpResponse failure(int status, std::string_view reason) {
    nlohmann::json j;
    j["error"] = true;
    j["reason"] = reason;
    return {status, j.dump()};
  }

  void writeLog(const std::string &id, const Event &e, bool error) {
    if (!log_.is_open())
      return;
    nlohmann::json j;
    j["session"] = id;
    j["event"] = toJson(e.payload);
    j["error"] = error;
    std::lock_guard lock(logMutex_);
    log_ << j.dump() << '\n';
    log_.flush();
  }

  SpecProgram program_;
  MonitorOptions options_;
  mutable std::shared_mutex tableMutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex logMutex_;
  std::ofstream log_;
};

} // namespace texp
