#pragma once

// Flat key = value run configuration shared by every CLI subcommand. File
// values are overridden by command-line flags. Unknown keys and malformed
// values are reported by key name.

#include <stdexcept>
#include <string>
#include <vector>

#include "chiralchain/dipole_pair.hpp"

namespace chiralchain {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  // Molecule constants (MHz, Debye); d_c is the magnitude, handedness comes
  // from the pair configuration.
  double molecule_a_mhz = 8572.05;
  double molecule_b_mhz = 3640.11;
  double molecule_c_mhz = 2790.97;
  double dipole_a = 1.201;
  double dipole_b = 1.916;
  double dipole_c = 0.365;
  PairConfiguration pair = PairConfiguration::RL;
  int j_max = 8;

  // Field grid for stark-map / couplings sweeps.
  double x_min = 0.0;
  double x_max = 20.0;
  int x_steps = 81;
  std::vector<int> m_list = {0, 1, -1};
  std::vector<double> r_list_nm = {1.0, 1.5, 2.0, 4.0};

  // Phase-diagram grid (x must stay positive there).
  double phase_x_min = 0.25;
  double phase_x_max = 20.0;
  int phase_x_steps = 80;
  double phase_r_min = 1.0;
  double phase_r_max = 4.0;
  int phase_r_steps = 31;

  // Chain solve. Couplings are free parameters in GHz.
  int chain_n = 8;
  std::string chain_method = "ed"; // "ed" | "free_fermion"
  double chain_jxy_ghz = 1.0;
  double chain_d_ghz = 0.5;
  double chain_jz_ghz = 0.0;
  double chain_h_ghz = 0.25;
  int ed_cap = 14;
  double spacing_nm = 1.7;
  int q_steps = 101;

  // Droplet noise estimator.
  double droplet_mu_debye = 2.5;
  double droplet_spacing_nm = 1.7;
  double droplet_radius_nm = 500.0;
  double droplet_charge_e = 1.0;

  std::string out_dir = "out";
  int workers = 1;

  MoleculeSpec base_molecule() const;
  EnantiomerPair enantiomer_pair() const;
  std::vector<double> x_grid() const;
  std::vector<double> phase_x_grid() const;
  std::vector<double> phase_r_grid() const;

  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Parses `key = value` lines; '#' starts a comment. Throws ConfigError with
// the offending key, IoError when the file cannot be read.
RunConfig parse_config_file(const std::string& path);

// Applies one key=value assignment (shared by the file parser and tests).
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

} // namespace chiralchain
