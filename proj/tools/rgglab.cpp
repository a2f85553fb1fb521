// Experiment runner: every operation is exposed as a reproducible batch
// job driven by a flat JSON config. Output bytes depend only on the config
// bytes and the tool version; the thread count affects scheduling only.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rgg/experiments.hpp"
#include "rgg/samplers.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string default_outdir() {
  const char* env = std::getenv("RGGLAB_OUTDIR");
  return env && *env ? env : ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random geometric graph experiment lab"};
  app.require_subcommand(1);

  std::string config_path;
  int threads = 1;

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--threads", threads, "worker count (does not change output bytes)")
      ->default_val(1);

  CLI::App* validate = app.add_subcommand("validate", "check a config without running");
  validate->add_option("config", config_path, "JSON config file")->required();

  CLI::App* version = app.add_subcommand("version", "print the tool version");

  CLI11_PARSE(app, argc, argv);

  if (version->parsed()) {
    std::cout << rgg::kVersion << "\n";
    return 0;
  }

  std::string text;
  try {
    text = read_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto issues = rgg::validate_config(text);
  if (validate->parsed()) {
    if (issues.empty()) {
      std::cout << "ok\n";
      return 0;
    }
    for (const auto& i : issues)
      std::cout << i.parameter << ": " << i.message << "\n";
    return 2;
  }

  if (!issues.empty()) {
    for (const auto& i : issues)
      std::cerr << "invalid config, " << i.parameter << ": " << i.message << "\n";
    return 2;
  }

  try {
    const rgg::ExperimentConfig cfg = rgg::parse_config(text);
    const rgg::RunArtifacts artifacts = rgg::run_experiment(cfg, threads);
    const std::string dir = cfg.output_path.empty() ? default_outdir() : cfg.output_path;
    const auto paths = rgg::write_artifacts(artifacts, dir);
    std::cout << artifacts.summary_line << " ->";
    for (const auto& p : paths) std::cout << " " << p;
    std::cout << "\n";
    return 0;
  } catch (const rgg::InsufficientAcceptanceError& e) {
    std::cerr << "budget error: " << e.what() << " (vertex " << e.vertex << ", prev "
              << e.prev << ", accepted " << e.accepted << "/" << e.budget << ")\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
}
