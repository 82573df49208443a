#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hsrm/errors.hpp"
#include "hsrm/harness.hpp"
#include "hsrm/version.hpp"

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw hsrm::ConfigError("cannot write '" + path.string() + "'");
  f << text;
}

int cmd_gen(const std::string& out) {
  const std::string text = hsrm::config_template_json();
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

struct RunFlags {
  std::string config;
  std::string out;
  std::string baseline;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool trace = false;
};

hsrm::RunConfig load_with_flags(const RunFlags& flags) {
  hsrm::RunConfig cfg = hsrm::load_config(flags.config);
  if (!flags.out.empty()) cfg.out_dir = flags.out;
  if (flags.trace) cfg.trace = true;
  if (!flags.baseline.empty()) cfg.baseline = hsrm::parse_baseline(flags.baseline);
  if (flags.seed_set) cfg.seeds = {flags.seed};
  return cfg;
}

int cmd_run(const RunFlags& flags) {
  hsrm::RunConfig cfg = load_with_flags(flags);
  cfg.seeds.resize(1);  // a single run uses the first seed
  const hsrm::SensorGraph g = hsrm::build_graph_from_spec(cfg.graph);
  const hsrm::AttackScenario sc = hsrm::build_scenario_from_spec(cfg.scenario, g);
  const hsrm::SeedRun run = hsrm::run_single(cfg, g, sc, cfg.seeds.front());
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const fs::path report = dir / "run_report.json";
  write_text(report, hsrm::run_report_json(cfg, run));
  std::cout << "wrote " << report.string() << "\n";
  if (cfg.trace) {
    const fs::path trace = dir / ("trace_seed" + std::to_string(run.seed) + ".csv");
    const fs::path tau = dir / ("tau_trace_seed" + std::to_string(run.seed) + ".csv");
    write_text(trace, run.run_trace_csv);
    write_text(tau, run.tau_trace_csv);
    std::cout << "wrote " << trace.string() << "\n";
    std::cout << "wrote " << tau.string() << "\n";
  }
  return 0;
}

int cmd_batch(const RunFlags& flags) {
  const hsrm::RunConfig cfg = load_with_flags(flags);
  const hsrm::BatchOutput out = hsrm::run_batch(cfg);
  hsrm::write_batch_outputs(out, cfg.out_dir);
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "batch_report.json").string()
            << " (" << cfg.seeds.size() << " seeds)\n";
  return 0;
}

void add_run_flags(CLI::App* cmd, RunFlags& flags, CLI::Option** seed_opt) {
  cmd->add_option("--config", flags.config, "JSON config file")->required();
  cmd->add_option("--out", flags.out, "output directory (overrides config out_dir)");
  cmd->add_option("--baseline", flags.baseline,
                  "comparison detector: none, random_patrol or plain_acs");
  *seed_opt = cmd->add_option("--seed", flags.seed, "override the seed list");
  cmd->add_flag("--trace", flags.trace, "write per-seed trace CSVs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stigmergic patrol simulator for sensor-network intrusion detection"};
  app.set_version_flag("--version",
                       std::string(hsrm::kToolName) + " " + hsrm::kToolVersion);
  app.require_subcommand(1);

  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "print a config template with every default");
  gen->add_option("--out", gen_out, "write the template to a file instead of stdout");

  RunFlags run_flags;
  CLI::Option* run_seed_opt = nullptr;
  CLI::App* run = app.add_subcommand("run", "one detection run, detailed report");
  add_run_flags(run, run_flags, &run_seed_opt);

  RunFlags batch_flags;
  CLI::Option* batch_seed_opt = nullptr;
  CLI::App* batch = app.add_subcommand("batch", "all seeds plus aggregate statistics");
  add_run_flags(batch, batch_flags, &batch_seed_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_out);
    if (run->parsed()) {
      run_flags.seed_set = run_seed_opt->count() > 0;
      return cmd_run(run_flags);
    }
    batch_flags.seed_set = batch_seed_opt->count() > 0;
    return cmd_batch(batch_flags);
  } catch (const hsrm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
