#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "scatter/errors.hpp"
#include "scatter/run.hpp"

namespace {

constexpr const char* kOutputEnv = "SCATTER_OUTPUT_DIR";

}  // namespace

int main(int argc, char** argv) {
  using namespace scatter;
  CLI::App app{"Eikonal, Born and partial-wave scattering amplitudes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string sources;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Evaluate a config and write outputs");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides " + std::string(kOutputEnv) +
                                        " and the config)");
  run->add_option("--sources", sources, "Comma separated sources, replacing the config list");
  run->add_flag("--quiet", quiet, "No progress output");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse a config and echo it with defaults");
  validate->add_option("config", validate_path, "Config file")->required()->check(CLI::ExistingFile);

  auto* ver = app.add_subcommand("version", "Print the tool version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ver) {
      std::cout << "scatter " << cli::version() << "\n";
      return 0;
    }
    if (*validate) {
      const auto cfg = cli::load_config(validate_path);
      std::cout << cli::to_text(cfg);
      return 0;
    }
    auto cfg = cli::load_config(config_path);
    if (!sources.empty()) cfg.sources = cli::parse_source_list(sources);
    if (!out_dir.empty())
      cfg.output_directory = out_dir;
    else if (const char* env = std::getenv(kOutputEnv); env && *env)
      cfg.output_directory = env;
    cfg.validate();
    const auto manifest = cli::run_scan(cfg, quiet ? nullptr : &std::cerr);
    if (!quiet) {
      for (const auto& w : manifest.warnings) std::cerr << "warning: " << w << "\n";
      std::cerr << "outputs in " << cfg.output_directory.string() << "\n";
    }
    return manifest.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
