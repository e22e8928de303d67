// afcsim: coordination server, single inquiries, scenario runs and engine
// comparison from the command line.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "afcsim/afc_server.hpp"
#include "afcsim/engine.hpp"
#include "afcsim/errors.hpp"
#include "afcsim/http_service.hpp"
#include "afcsim/simulation.hpp"
#include "afcsim/wire.hpp"

namespace {

using namespace afcsim;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitHarm = 3;

struct EngineConfig {
  std::string name;
  propagation::PropagationConfig propagation;
  propagation::ProtectionConfig protection;
};

EngineConfig load_engine(const std::string& path, const std::string& fallback_name) {
  EngineConfig cfg{fallback_name, {}, {}};
  if (path.empty()) return cfg;
  const auto j = wire::load_document(path);
  if (auto it = j.find("name"); it != j.end() && it->is_string()) cfg.name = it->get<std::string>();
  if (auto it = j.find("propagation"); it != j.end()) {
    cfg.propagation = wire::propagation_config_from_json(*it);
  }
  if (auto it = j.find("protection"); it != j.end()) {
    cfg.protection = wire::protection_config_from_json(*it);
  }
  return cfg;
}

afc::IncumbentDatabase load_db(const std::string& path) {
  if (path.empty()) return {};
  auto db = wire::database_from_json(wire::load_document(path));
  afc::validate(db);
  return db;
}

afc::ServerPolicy load_policy(const std::string& path) {
  return path.empty() ? afc::ServerPolicy{} : wire::policy_from_json(wire::load_document(path));
}

std::pair<std::string, int> split_host_port(const std::string& endpoint) {
  const auto colon = endpoint.rfind(':');
  if (colon == std::string::npos) throw ParseError("expected host:port, got '" + endpoint + "'");
  try {
    return {endpoint.substr(0, colon), std::stoi(endpoint.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError("bad port in '" + endpoint + "'");
  }
}

void print_response_text(const afc::SpectrumInquiryResponse& resp) {
  std::printf("requestId     %s\n", resp.request_id.c_str());
  std::printf("responseCode  %s\n", std::string(afc::to_string(resp.response_code)).c_str());
  std::printf("countryCode   %s\n", resp.country_code ? resp.country_code->c_str() : "None");
  std::printf("issueTime     %s\n",
              resp.issue_time ? format_iso8601(*resp.issue_time).c_str() : "None");
  std::printf("expireTime    %s\n",
              resp.expire_time ? format_iso8601(*resp.expire_time).c_str() : "None");
  std::printf("grants        %zu\n", resp.grants.size());
  for (const auto& g : resp.grants) {
    std::printf("  %-18s %6.2f dBm\n", spectrum::to_string(g.channel).c_str(), g.max_eirp_dbm);
  }
}

afc::HttpAfcService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const std::string& db_path, const std::string& policy_path,
              const std::string& engine_path, const std::string& host, int port) {
  const auto engine = load_engine(engine_path, "reference");
  afc::HttpAfcService service(
      afc::AfcServer(load_db(db_path), load_policy(policy_path), engine.propagation,
                     engine.protection));
  const int bound = service.bind(host, port);
  if (bound < 0) {
    std::cerr << "afcsim serve: cannot bind " << host << ":" << port << "\n";
    return kExitFailure;
  }
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on http://" << host << ":" << bound << afc::kInquiryPath << std::endl;
  service.listen_after_bind();
  g_service = nullptr;
  return kExitOk;
}

int run_inquire(const std::string& request_path, const std::string& server,
                const std::string& db_path, const std::string& policy_path,
                const std::string& engine_path, const std::string& now_text,
                const std::string& format) {
  const auto req = wire::request_from_json(wire::load_document(request_path));
  afc::SpectrumInquiryResponse resp;
  if (!server.empty()) {
    const auto [host, port] = split_host_port(server);
    resp = afc::post_inquiry(host, port, req);
  } else {
    const auto engine = load_engine(engine_path, "reference");
    const afc::AfcServer afc_server(load_db(db_path), load_policy(policy_path), engine.propagation,
                                    engine.protection);
    const UtcSeconds now = now_text.empty() ? afc::system_now() : parse_iso8601(now_text);
    resp = afc_server.handle(req, now);
  }
  if (format == "text") {
    print_response_text(resp);
  } else {
    std::cout << wire::to_json(resp).dump(2) << "\n";
  }
  return kExitOk;
}

int run_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, const std::string& format, bool fail_on_harm) {
  auto s = scenario::load_scenario_file(scenario_path);
  if (seed) s.seed = *seed;
  const auto report = scenario::run_scenario(s);
  if (!out_dir.empty()) scenario::write_report(report, out_dir);

  if (format == "json") {
    std::cout << scenario::to_json(report).dump(2) << "\n";
  } else {
    for (const auto& ap : report.aps) {
      std::cout << "== " << ap.id << " (" << ap::to_string(ap.state.phase) << ")\n"
                << ap.channel_report << "\n";
    }
    std::cout << "harm violations:       " << report.harm.metrics.violation_count << "\n";
    for (const auto& [link, ion] : report.harm.metrics.worst_i_over_n_db) {
      std::printf("  worst I/N at %s: %.2f dB\n", link.c_str(), ion);
    }
    std::cout << "compliance violations: " << report.compliance_violations.size() << "\n";
    for (const auto& d : report.detections) {
      std::cout << "  " << d.detector << (d.alarm ? " ALARM " : " ok ") << d.detail << "\n";
    }
  }
  const bool harmed =
      report.harm.metrics.violation_count > 0 || !report.compliance_violations.empty();
  return fail_on_harm && harmed ? kExitHarm : kExitOk;
}

int run_diff(const std::string& corpus_path, const std::string& db_path,
             const std::string& engine_a_path, const std::string& engine_b_path,
             double tolerance_db, const std::string& format) {
  const auto corpus = wire::load_document(corpus_path);
  if (!corpus.is_array()) throw ParseError("request corpus must be a JSON array", 1);
  std::vector<afc::SpectrumInquiryRequest> requests;
  for (const auto& r : corpus) requests.push_back(wire::request_from_json(r));

  const auto db = load_db(db_path);
  const auto a = load_engine(engine_a_path, "engine-a");
  const auto b = load_engine(engine_b_path, "engine-b");
  const afc::ReferenceEngine engine_a(a.name, db, a.propagation, a.protection);
  const afc::ReferenceEngine engine_b(b.name, db, b.propagation, b.protection);
  const auto report = afc::differential_compare(requests, engine_a, engine_b, tolerance_db);

  if (format == "text") {
    std::cout << report.engine_a << " vs " << report.engine_b << ": " << report.requests.size()
              << " of " << requests.size() << " requests diverge\n";
    for (const auto& r : report.requests) {
      std::cout << "  " << r.request_id << ": only-a " << r.only_in_a.size() << ", only-b "
                << r.only_in_b.size() << ", eirp deltas " << r.eirp_deltas.size() << "\n";
    }
  } else {
    std::cout << wire::to_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"afcsim - 6 GHz AFC coordination and GNSS spoofing testbed"};
  app.require_subcommand(1);

  std::string db_path, policy_path, engine_path, format = "json", out_dir, now_text, server;
  std::string host = "127.0.0.1", input_path, engine_a_path, engine_b_path;
  int port = 8080;
  std::optional<std::uint64_t> seed;
  bool fail_on_harm = false;
  double tolerance_db = 0.1;

  auto* serve = app.add_subcommand("serve", "Run the coordination server over HTTP");
  serve->add_option("--db", db_path, "Incumbent database JSON");
  serve->add_option("--policy", policy_path, "Server policy JSON");
  serve->add_option("--engine", engine_path, "Propagation/protection config JSON");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");

  auto* inquire = app.add_subcommand("inquire", "Submit one request file and print the response");
  inquire->add_option("request", input_path, "Request JSON")->required();
  inquire->add_option("--server", server, "host:port of a running server; in-process if omitted");
  inquire->add_option("--db", db_path, "Incumbent database JSON");
  inquire->add_option("--policy", policy_path, "Server policy JSON");
  inquire->add_option("--engine", engine_path, "Propagation/protection config JSON");
  inquire->add_option("--now", now_text, "Server time, ISO-8601 UTC (default: wall clock)");
  inquire->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Run a scenario file");
  simulate->add_option("scenario", input_path, "Scenario JSON")->required();
  simulate->add_option("--out", out_dir, "Directory for report.json and channel reports");
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  simulate->add_flag("--fail-on-harm", fail_on_harm, "Exit 3 on interference or compliance violations");

  auto* diff = app.add_subcommand("diff-engines", "Compare two engine configs over a request corpus");
  diff->add_option("corpus", input_path, "JSON array of requests")->required();
  diff->add_option("--db", db_path, "Incumbent database JSON");
  diff->add_option("--engine-a", engine_a_path, "Engine A config JSON")->required();
  diff->add_option("--engine-b", engine_b_path, "Engine B config JSON")->required();
  diff->add_option("--tolerance", tolerance_db, "EIRP tolerance in dB");
  diff->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (*serve) return run_serve(db_path, policy_path, engine_path, host, port);
    if (*inquire) {
      return run_inquire(input_path, server, db_path, policy_path, engine_path, now_text, format);
    }
    if (*simulate) return run_simulate(input_path, out_dir, seed, format, fail_on_harm);
    if (*diff) {
      return run_diff(input_path, db_path, engine_a_path, engine_b_path, tolerance_db, format);
    }
  } catch (const ParseError& e) {
    std::cerr << "afcsim: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ValidationError& e) {
    std::cerr << "afcsim: validation error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const UnsupportedBandwidth& e) {
    std::cerr << "afcsim: validation error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "afcsim: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
