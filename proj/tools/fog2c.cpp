// fog2c: joint communication and computing energy experiments.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fog2c/catalog.hpp"
#include "fog2c/config.hpp"
#include "fog2c/errors.hpp"
#include "fog2c/experiment.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw fog2c::Error("cannot read config '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int report_config_error(const std::string& path, const fog2c::ConfigError& e) {
  std::fprintf(stderr, "%s: invalid configuration (%zu issue%s)\n", path.c_str(),
               e.issues().size(), e.issues().size() == 1 ? "" : "s");
  for (const auto& i : e.issues()) std::fprintf(stderr, "  %s\n", i.c_str());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fog2c: energy of joint communication and computing in fog networks"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment and write CSV artifacts");
  std::string command, config_path, out_dir;
  std::uint64_t seed = 0;
  bool plot = false;
  unsigned threads = 1;
  run->add_option("command", command, "scenario-a | scenario-b | scenario-c")
      ->required()
      ->check(CLI::IsMember({"scenario-a", "scenario-b", "scenario-c"}));
  run->add_option("--config", config_path, "Scenario config (JSON)")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides experiment.seed)");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides output.directory)");
  auto* plot_opt = run->add_flag("--plot", plot, "Also render SVG plots");
  run->add_option("--threads", threads, "Worker threads; 0 = hardware concurrency")
      ->default_val(1);

  auto* validate = app.add_subcommand("validate", "Parse and validate a config");
  std::string validate_path;
  bool emit = false;
  validate->add_option("--config", validate_path, "Scenario config (JSON)")->required();
  validate->add_flag("--emit", emit, "Print the canonical SI form of the config");

  app.add_subcommand("catalog", "Print the built-in model catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("catalog")) {
      std::fputs(fog2c::catalog::render().c_str(), stdout);
      return 0;
    }
    if (app.got_subcommand("validate")) {
      try {
        const auto cfg = fog2c::parse_config(read_text(validate_path));
        if (emit) {
          std::fputs(fog2c::emit_config(cfg).c_str(), stdout);
        } else {
          std::printf("%s: ok (scenario %s, %zu nodes, %zu links, digest %s)\n",
                      validate_path.c_str(),
                      std::string(fog2c::to_string(cfg.experiment.scenario)).c_str(),
                      cfg.topology.nodes().size(), cfg.topology.links().size(),
                      fog2c::config_digest(cfg).c_str());
        }
        return 0;
      } catch (const fog2c::ConfigError& e) {
        return report_config_error(validate_path, e);
      }
    }

    fog2c::ScenarioConfig cfg;
    try {
      cfg = fog2c::parse_config(read_text(config_path));
    } catch (const fog2c::ConfigError& e) {
      return report_config_error(config_path, e);
    }
    fog2c::RunOptions opt;
    opt.command = *fog2c::parse_command(command);
    if (*seed_opt) opt.seed = seed;
    if (*out_opt) opt.out_dir = out_dir;
    if (*plot_opt) opt.plot = true;
    opt.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;

    const auto report = fog2c::run(cfg, opt);
    std::printf("%s: seed %llu, digest %s, %.3f s\n", command.c_str(),
                static_cast<unsigned long long>(report.seed), report.digest.c_str(),
                report.wall_clock);
    for (const auto& s : report.summary) {
      std::printf("  %-17s success %6.2f%%  median %s\n",
                  std::string(fog2c::to_string(s.strategy)).c_str(), 100.0 * s.success_rate,
                  s.median ? (std::to_string(*s.median) + " J").c_str() : "undefined");
    }
    for (const auto& s : report.savings) {
      if (s.size) continue;
      const std::string base(fog2c::to_string(s.baseline));
      if (s.percent) std::printf("  full_opt saves %.1f%% vs %s\n", *s.percent, base.c_str());
      else std::printf("  full_opt saves n/a vs %s\n", base.c_str());
    }
    if (report.optimal_rate) std::printf("  optimal rate %.6g /s\n", *report.optimal_rate);
    for (const auto& a : report.artifacts) std::printf("  wrote %s\n", a.string().c_str());
    return 0;
  } catch (const fog2c::ConfigError& e) {
    return report_config_error(config_path, e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
