// beurling: command-line front end.
//
//   beurling --config run.cfg [--set key=value]... [--out PATH] [--format csv|json] [--quiet]
//
// Exit status: 0 success, 2 configuration error, 3 numeric range error,
// 4 verification contradiction.  Output goes to a temporary file beside PATH
// and is renamed into place only when the command succeeds.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "beurling/cli.hpp"
#include "beurling/errors.hpp"

namespace fs = std::filesystem;
using namespace beurling;

namespace {

bool config_like(ErrorCode c) {
  return c == ErrorCode::config || c == ErrorCode::unknown_scenario || c == ErrorCode::parameter;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beurling generalized number systems: counting, Mertens constants, kernels, zeta, verification"};
  std::string config_path, out_path, format, command;
  std::vector<std::string> sets;
  bool quiet = false;
  app.add_option("command", command, "command (overrides the config's command)")
      ->check(CLI::IsMember(command_names()));
  app.add_option("--config", config_path, "configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", sets, "key=value override, repeatable")->take_all();
  app.add_option("--out", out_path, "output path (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--quiet", quiet, "no diagnostics on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  auto say = [&](const std::string& msg) {
    if (!quiet) std::cerr << "beurling: " << msg << '\n';
  };

  RunConfig cfg;
  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    std::vector<std::string> overrides = sets;
    if (!command.empty()) overrides.push_back("command = " + command);
    if (!out_path.empty()) overrides.push_back("out = " + out_path);
    if (!format.empty()) overrides.push_back("format = " + format);
    cfg = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    for (const auto& i : e.issues()) say("config error: " + (i.where.empty() ? "" : i.where + ": ") + i.message);
    return kExitConfig;
  } catch (const Error& e) {
    say(std::string("config error: ") + e.what());
    return kExitConfig;
  }

  fs::path tmp;
  try {
    int status = 0;
    if (cfg.out.empty()) {
      std::ostringstream buf;  // nothing reaches stdout unless the command completes
      status = run(cfg, buf);
      std::cout << buf.str() << std::flush;
    } else {
      fs::path target(cfg.out);
      tmp = target;
      tmp += ".partial";
      {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw Error(ErrorCode::config, "cannot write " + tmp.string());
        status = run(cfg, f);
        if (!f.flush()) throw Error(ErrorCode::config, "write failed: " + tmp.string());
      }
      fs::rename(tmp, target);
      tmp.clear();
    }
    if (status == kExitContradiction) say("verification found a contradiction");
    return status;
  } catch (const Error& e) {
    if (!tmp.empty()) fs::remove(tmp);
    say(std::string(config_like(e.code()) ? "config error [" : "numeric error [") + error_code_name(e.code()) +
        "]: " + e.what());
    return config_like(e.code()) ? kExitConfig : kExitNumeric;
  } catch (const std::exception& e) {
    if (!tmp.empty()) fs::remove(tmp);
    say(std::string("error: ") + e.what());
    return kExitNumeric;
  }
}
