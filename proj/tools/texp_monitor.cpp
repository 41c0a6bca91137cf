// HTTP monitoring server: POST / with one JSON event per request and get
// back {"error":false} while the session conforms to the spec.

#include <csignal>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>

#include "texp/replay.hpp"
#include "texp/service.hpp"
#include "texp/service_http.hpp"

namespace {

httplib::Server *activeServer = nullptr;

extern "C" void stopServer(int) {
  if (activeServer)
    activeServer->stop();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Trace-expression monitoring service"};
  texp::ServiceConfig config;
  std::string specPath;
  std::optional<std::string> logPath;
  std::string host = "127.0.0.1";

  app.add_option("--spec", specPath, "Specification file (.texp)")->required()->check(CLI::ExistingFile);
  app.add_option("--port", config.port, "TCP port")->check(CLI::Range(1, 65535));
  app.add_option("--host", host, "Address to bind");
  app.add_option("--frontier-cap", config.frontierCap, "Largest frontier per session")->check(CLI::PositiveNumber);
  app.add_option("--log", logPath, "Append every processed event to this JSONL file");
  CLI11_PARSE(app, argc, argv);
  config.specPath = specPath;
  if (logPath)
    config.logPath = *logPath;

  try {
    texp::MonitorService service(texp::loadSpec(config.specPath), config.frontierCap, config.logPath);
    httplib::Server server;
    texp::mountRoutes(server, service);
    activeServer = &server;
    std::signal(SIGINT, stopServer);
    std::signal(SIGTERM, stopServer);
    std::cerr << "texp-monitor: listening on " << host << ":" << config.port << '\n';
    if (!server.listen(host, config.port)) {
      std::cerr << "texp-monitor: cannot listen on " << host << ":" << config.port << '\n';
      return 1;
    }
  } catch (const std::exception &e) {
    std::cerr << e.what();
    return 2;
  }
  return 0;
}
