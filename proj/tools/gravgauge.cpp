// gravgauge: verification driver over the catalog spacetimes.
//
//   gravgauge verify --spacetime <name> --suite <name> --grid-n <int> --fd-step <float>
//                    --tol <float> --seed <int> --report <path> [--config <file>]
//   gravgauge catalog
//
// Exit codes: 0 all checks pass, 1 some check failed (report still written), 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "gravgauge/verify.hpp"

namespace {

constexpr int kExitUsage = 2;

void print_catalog() {
  for (const auto& name : gravgauge::catalog_names()) {
    std::string description;
    if (gravgauge::catalog_dimension(name) == 2)
      description = gravgauge::require_entry<2>(name).description;
    else
      description = gravgauge::require_entry<4>(name).description;
    std::printf("%-14s dim=%d  %s\n", name.c_str(), gravgauge::catalog_dimension(name), description.c_str());
  }
}

/// Declares the command line on `app`, binding values into `cfg` and `config_path`.
CLI::App* declare(CLI::App& app, gravgauge::SuiteConfig& cfg, std::string& config_path) {
  app.require_subcommand(1);
  auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");
  verify->add_option("--config", config_path, "config file (INI/TOML, keys are the long flag names)");
  verify->add_option("--spacetime", cfg.spacetime, "catalog spacetime")
      ->check(CLI::IsMember(gravgauge::catalog_names()))
      ->capture_default_str();
  verify->add_option("--suite", cfg.suite, "suite to run")
      ->check(CLI::IsMember(gravgauge::suite_names()))
      ->capture_default_str();
  verify->add_option("--grid-n", cfg.grid_n, "sample points per axis")->check(CLI::Range(5, 1000))->capture_default_str();
  verify->add_option("--fd-step", cfg.fd_step, "finite-difference step relative to the axis extent")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--tol", cfg.tol, "tolerance of the pseudo-translation correspondence check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "seed for random test fields")->capture_default_str();
  verify->add_option("--report", cfg.report_path, "report output path")->capture_default_str();
  app.add_subcommand("catalog", "list the catalog spacetimes");
  return verify;
}

/// Config file entries for options not given on the command line, as extra arguments.
/// Keys may sit at top level or in a [verify] section.
std::vector<std::string> config_arguments(const CLI::App& verify, const std::string& path) {
  std::vector<std::string> out;
  for (const auto& item : CLI::ConfigTOML().from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == "verify"))
      throw CLI::ConfigError::Extras(item.fullname());
    const CLI::Option* opt = verify.get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") throw CLI::ConfigError::Extras(item.fullname());
    if (opt->count() > 0) continue;
    out.push_back("--" + item.name);
    out.insert(out.end(), item.inputs.begin(), item.inputs.end());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  gravgauge::SuiteConfig cfg;
  std::string config_path;
  CLI::App app{"Gauge-theoretic gravity verification driver"};
  CLI::App* verify = declare(app, cfg, config_path);

  try {
    app.parse(argc, argv);
    if (verify->parsed() && !config_path.empty()) {
      std::vector<std::string> args(argv, argv + argc);
      for (auto& a : config_arguments(*verify, config_path)) args.push_back(std::move(a));
      std::vector<char*> ptrs;
      for (auto& a : args) ptrs.push_back(a.data());
      cfg = gravgauge::SuiteConfig{};
      CLI::App again{"Gauge-theoretic gravity verification driver"};
      declare(again, cfg, config_path);
      again.parse(static_cast<int>(ptrs.size()), ptrs.data());
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (app.got_subcommand("catalog")) {
    print_catalog();
    return 0;
  }

  gravgauge::Report report;
  try {
    report = gravgauge::run(cfg);
  } catch (const gravgauge::InvalidArgument& e) {
    std::cerr << "gravgauge: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    gravgauge::write_report(report, cfg.report_path);
  } catch (const gravgauge::Error& e) {
    std::cerr << "gravgauge: " << e.what() << "\n";
    return kExitUsage;
  }
  for (const auto& c : report.checks)
    std::printf("%-4s %-45s residual=%.6e tol=%.1e (%.0f ms)\n", c.pass ? "PASS" : "FAIL", c.check_id.c_str(),
                c.residual, c.tolerance, c.runtime_ms);
  std::printf("%d passed, %d failed\n", report.passed(), report.failed());
  return report.all_pass() ? 0 : 1;
}
