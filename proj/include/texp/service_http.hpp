#pragma once

#include <optional>
#include <string>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "texp/service.hpp"

namespace texp {

namespace detail {

// Session for /final and /reset: {"session": ...} in the body, then the
// `session` query parameter, then the default.
inline std::optional<std::string> sessionOf(const httplib::Request &req, bool fromBody) {
  if (fromBody && !req.body.empty()) {
    auto j = nlohmann::json::parse(req.body, nullptr, false);
    if (j.is_object() && j.contains("session") && j["session"].is_string())
      return j["session"].get<std::string>();
  }
  if (req.has_param("session"))
    return req.get_param_value("session");
  return std::nullopt;
}

inline void reply(httplib::Response &res, const HttpResponse &r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

} // namespace detail

/// Mounts POST /, /final and /reset on the server.
inline void mountRoutes(httplib::Server &server, MonitorService &service) {
  server.Post("/", [&service](const httplib::Request &req, httplib::Response &res) {
    detail::reply(res, service.handleEvent(req.body, detail::sessionOf(req, false)));
  });
  server.Post("/final", [&service](const httplib::Request &req, httplib::Response &res) {
    detail::reply(res, service.handleFinal(detail::sessionOf(req, true).value_or(std::string(kDefaultSession))));
  });
  server.Post("/reset", [&service](const httplib::Request &req, httplib::Response &res) {
    detail::reply(res, service.handleReset(detail::sessionOf(req, true).value_or(std::string(kDefaultSession))));
  });
}

} // namespace texp
