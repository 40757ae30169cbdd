// chiralchain: Stark-dressed chiral-molecule arrays as XXZ+DMI spin chains.
//
// Subcommands: stark-map, couplings, phase-diagram, chain, noise.
// Exit codes: 0 ok, 2 I/O, 3 config, 4 numeric-contract violation.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "chiralchain/commands.hpp"
#include "chiralchain/errors.hpp"

using namespace chiralchain;

int main(int argc, char** argv) {
  CLI::App app{"Stark-dressed chiral molecule arrays as XXZ+DMI spin chains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int workers = 0;
  int j_max = 0;
  bool noise_json = false;

  app.add_option("--config", config_path, "run configuration file (key = value lines)");
  app.add_option("--out", out_dir, "output directory (overrides out_dir)");
  app.add_option("--workers", workers, "worker thread count (overrides workers)");
  app.add_option("--j-max", j_max, "basis truncation (overrides j_max)");

  auto* cmd_stark = app.add_subcommand("stark-map", "sector spectra over the field grid");
  auto* cmd_coup = app.add_subcommand("couplings", "pair coefficients and spin couplings");
  auto* cmd_phase = app.add_subcommand("phase-diagram", "phase grid and critical boundary");
  auto* cmd_chain = app.add_subcommand("chain", "chain correlations and structure factor");
  auto* cmd_noise = app.add_subcommand("noise", "droplet electrostatic noise estimate");
  cmd_noise->add_flag("--json", noise_json, "emit a JSON object instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    if (j_max > 0) cfg.j_max = j_max;

    if (cmd_stark->parsed()) commands::stark_map(cfg);
    if (cmd_coup->parsed()) commands::couplings(cfg);
    if (cmd_phase->parsed()) commands::phase_diagram(cfg);
    if (cmd_chain->parsed()) commands::chain(cfg);
    if (cmd_noise->parsed()) commands::noise(cfg, noise_json, std::cout);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric contract violation: " << e.what() << '\n';
    return 4;
  }
}
