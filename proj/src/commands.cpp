#include "chiralchain/commands.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "chiralchain/chain.hpp"
#include "chiralchain/csv.hpp"
#include "chiralchain/droplet.hpp"
#include "chiralchain/phase.hpp"
#include "chiralchain/rotor.hpp"

namespace chiralchain::commands {

namespace {

std::string out_path(const RunConfig& cfg, const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
  return (fs::path(cfg.out_dir) / name).string();
}

SpinCouplings chain_couplings(const RunConfig& cfg) {
  SpinCouplings c;
  c.j_xy_ghz = cfg.chain_jxy_ghz;
  c.d_ghz = cfg.chain_d_ghz;
  c.j_z_ghz = cfg.chain_jz_ghz;
  c.h_ghz = cfg.chain_h_ghz;
  c.j_tilde_ghz = std::hypot(c.j_xy_ghz, c.d_ghz);
  c.theta_rad = std::atan2(c.d_ghz, c.j_xy_ghz);
  return c;
}

void write_correlations(CsvWriter& csv, const CorrelationSet& set) {
  const char* frame = set.frame == Frame::Effective ? "effective" : "laboratory";
  for (int i = 0; i < set.n_sites; ++i)
    for (int j = 0; j < set.n_sites; ++j)
      csv.row(i, j, set.sigma_pm(i, j).real(), set.sigma_pm(i, j).imag(), frame);
}

std::vector<double> default_q_grid(const RunConfig& cfg) {
  // Symmetric grid over [0, 2 q_lattice] with q_lattice = 2 pi / spacing; an
  // odd point count pins q_lattice itself onto the grid.
  const int n = (cfg.q_steps % 2 == 0) ? cfg.q_steps + 1 : cfg.q_steps;
  const double q_max = 4.0 * M_PI / cfg.spacing_nm;
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = q_max * i / (n - 1);
  return q;
}

} // namespace

void stark_map(const RunConfig& cfg) {
  cfg.validate();
  const auto rows = chiralchain::stark_map(cfg.base_molecule(), cfg.x_grid(), {cfg.j_max},
                                           cfg.m_list, cfg.workers);
  CsvWriter csv(out_path(cfg, "stark_map.csv"), "x,m,level_index,energy_over_B");
  for (const auto& r : rows) csv.row(r.x, r.m, r.level_index, r.energy_over_B);
  csv.close();
}

void couplings(const RunConfig& cfg) {
  cfg.validate();
  const auto pair = cfg.enantiomer_pair();
  const auto d = dress_pair_with_ramp(pair, cfg.x_grid(), {cfg.j_max}, cfg.workers);

  CsvWriter coeff_csv(out_path(cfg, "coefficients.csv"), "x,C1,C2,C3,C4,Re_Cd1,Im_Cd1");
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    const auto& c = d.coeffs[i];
    coeff_csv.row(d.x[i], c.C1, c.C2, c.C3, c.C4, c.Cd1.real(), c.Cd1.imag());
  }
  coeff_csv.close();

  CsvWriter coup_csv(out_path(cfg, "couplings.csv"),
                     "x,r_nm,Jxy_GHz,D_GHz,Jz_GHz,h_GHz,Jtilde_GHz,theta_rad");
  for (std::size_t i = 0; i < d.x.size(); ++i)
    for (double r : cfg.r_list_nm) {
      const auto s = couplings_at(d, i, r);
      coup_csv.row(s.x, s.r_nm, s.j_xy_ghz, s.d_ghz, s.j_z_ghz, s.h_ghz, s.j_tilde_ghz,
                   s.theta_rad);
    }
  coup_csv.close();
}

void phase_diagram(const RunConfig& cfg) {
  cfg.validate();
  const auto grid = phase_grid(cfg.phase_x_grid(), cfg.phase_r_grid(), cfg.enantiomer_pair(),
                               {cfg.j_max}, cfg.workers);

  CsvWriter grid_csv(out_path(cfg, "phase_grid.csv"), "x,r_nm,jz_ratio,h_ratio,label");
  for (const auto& p : grid)
    grid_csv.row(p.x, p.r_nm, p.jz_ratio, p.h_ratio, to_string(p.label));
  grid_csv.close();

  CsvWriter boundary_csv(out_path(cfg, "boundary.csv"), "x,r_nm");
  for (const auto& b : boundary_points(grid)) boundary_csv.row(b.x, b.r_nm);
  boundary_csv.close();
}

void chain(const RunConfig& cfg) {
  cfg.validate();
  const SpinCouplings c = chain_couplings(cfg);
  const ChainSpec spec{cfg.chain_n, c};

  CorrelationSet eff;
  Eigen::MatrixXd density;
  if (cfg.chain_method == "ed") {
    const auto g_eff = ed_ground_state(spec, false, cfg.ed_cap);
    eff = correlations_ed(spec, g_eff.state, Frame::Effective);
    const auto g_lab = ed_ground_state(spec, true, cfg.ed_cap);
    density = density_correlations_ed(cfg.chain_n, g_lab.state);
  } else {
    if (c.j_tilde_ghz == 0.0)
      throw ConfigError("config: key 'chain.jxy_ghz': free-fermion path needs J_tilde > 0");
    if (cfg.chain_n > kDefaultFreeFermionCap)
      throw ConfigError("config: key 'chain.n': exceeds the free-fermion cap of " +
                        std::to_string(kDefaultFreeFermionCap) + " sites");
    const double ratio = cfg.chain_h_ghz / c.j_tilde_ghz;
    if (cfg.chain_n <= 64) {
      eff = xx_correlations_free_fermion(cfg.chain_n, ratio);
    } else {
      // Large chains: one row through the center keeps the run tractable.
      const int i0 = cfg.chain_n / 2;
      const auto row = xx_correlation_row_free_fermion(cfg.chain_n, ratio, i0);
      eff.frame = Frame::Effective;
      eff.n_sites = cfg.chain_n;
      eff.sigma_pm = Eigen::MatrixXcd::Zero(cfg.chain_n, cfg.chain_n);
      for (int j = 0; j < cfg.chain_n; ++j) {
        eff.sigma_pm(i0, j) = row[static_cast<std::size_t>(j)];
        eff.sigma_pm(j, i0) = std::conj(row[static_cast<std::size_t>(j)]);
      }
    }
    density = density_correlations_free_fermion(cfg.chain_n, ratio);
  }
  const auto lab = lab_frame_transform(eff, c.theta_rad);

  CsvWriter corr_csv(out_path(cfg, "correlations.csv"), "i,j,re,im,frame");
  write_correlations(corr_csv, eff);
  write_correlations(corr_csv, lab);
  corr_csv.close();

  CsvWriter sf_csv(out_path(cfg, "structure_factor.csv"), "q_inv_nm,S");
  for (const auto& row : structure_factor(density, cfg.spacing_nm, default_q_grid(cfg)))
    sf_csv.row(row.q_inv_nm, row.s);
  sf_csv.close();
}

void noise(const RunConfig& cfg, bool as_json, std::ostream& out) {
  cfg.validate();
  const DropletScenario s{cfg.droplet_mu_debye, cfg.droplet_spacing_nm, cfg.droplet_radius_nm,
                          cfg.droplet_charge_e};
  const auto r = droplet_report(s);
  const bool uncharged = cfg.droplet_charge_e == 0.0;

  if (as_json) {
    nlohmann::json j;
    j["v_dd_joules"] = r.v_dd_joules;
    j["v_dd_kelvin"] = r.v_dd_kelvin;
    j["v_charge_joules"] = r.v_charge_joules;
    j["v_charge_kelvin"] = r.v_charge_kelvin;
    if (uncharged)
      j["ratio"] = "inf"; // sentinel: droplet carries no charge
    else
      j["ratio"] = r.ratio;
    out << j.dump(2) << '\n';
    return;
  }

  out << "V_dd     = " << csv_num(r.v_dd_kelvin) << " K  (" << csv_num(r.v_dd_joules) << " J)\n";
  out << "V_charge = " << csv_num(r.v_charge_kelvin) << " K  (" << csv_num(r.v_charge_joules)
      << " J)\n";
  if (uncharged)
    out << "ratio    = inf (droplet carries no charge)\n";
  else
    out << "ratio    = " << csv_num(r.ratio) << '\n';
}

} // namespace chiralchain::commands
