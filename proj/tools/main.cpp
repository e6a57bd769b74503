// smallf: exact finite constructions (tube families, Cantor schedules,
// well-approximable sets, digit-block sums) as scriptable subcommands.
#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "smallf/parallel.hpp"
#include "smallf/rational.hpp"
#include "smallf/serialize.hpp"

namespace {

using smallf::Json;

constexpr const char* kVersion = "0.1.0";

Json collect_config(const CLI::App* app) {
  Json j = Json::object();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name == "--version" || name.rfind("--", 0) != 0) continue;
    const std::string key = name.substr(2);
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (res.empty()) {
        j[key] = true;
      } else if (res.size() == 1) {
        j[key] = res.front();
      } else {
        j[key] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      j[key] = opt->get_default_str();
    }
  }
  for (const CLI::App* sub : app->get_subcommands()) j[sub->get_name()] = collect_config(sub);
  return j;
}

Json checks_json(const std::vector<smallf::cli::Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return arr;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
  } else {
    smallf::write_atomic(path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Exact finite constructions: tube families, Cantor schedules, well-approximable sets, digit-block sums"};
  app.fallthrough();
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  smallf::cli::GlobalOptions g;
  app.add_option("--threads", g.threads, "worker threads; 0 uses the hardware count")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for sampled audits")->capture_default_str();
  app.add_option("--format", g.format, "auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "output file (written atomically); default stdout");
  app.add_option("--manifest", g.manifest, "run manifest path; default <out>.manifest.json, or stderr");

  smallf::cli::Handler handler;
  std::string command;
  smallf::cli::add_commands(app, g, handler, command);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (g.threads > 0) smallf::set_parallelism(g.threads);

  smallf::cli::CommandOutput out;
  try {
    out = handler();
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const smallf::PreconditionError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const smallf::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  Json config = collect_config(&app);
  bool ok = true;
  for (const auto& c : out.checks) ok = ok && c.pass;
  const std::string format = g.format == "auto" ? out.default_format : g.format;

  // The document omits thread count and paths so its bytes depend only on inputs and seed.
  Json doc_config = config;
  for (const char* k : {"threads", "out", "manifest", "format"}) doc_config.erase(k);
  std::string body;
  if (format == "csv") {
    body = out.table ? out.table->csv() : std::string();
  } else {
    Json doc{{"command", command}, {"config", doc_config}};
    if (out.table) doc["table"] = out.table->json();
    for (const auto& [k, v] : out.extra.items()) doc[k] = v;
    doc["checks"] = checks_json(out.checks);
    doc["measured"] = out.measured;
    doc["pass"] = ok;
    body = smallf::dump(doc);
  }
  const int code = ok ? 0 : 1;
  try {
    emit(g.out, body);
    config["threads"] = smallf::parallelism();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Json manifest{{"tool", "smallf"},          {"version", kVersion},
                  {"command", command},        {"config", config},
                  {"wall_time_s", wall},       {"checks", checks_json(out.checks)},
                  {"measured", out.measured},  {"exit_code", code}};
    std::string mpath = g.manifest;
    if (mpath.empty() && !g.out.empty() && g.out != "-") mpath = g.out + ".manifest.json";
    if (mpath.empty()) {
      std::cerr << manifest.dump() << "\n";
    } else {
      smallf::write_atomic(mpath, smallf::dump(manifest));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& c : out.checks)
    if (!c.pass) std::cerr << "check failed: " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return code;
}
