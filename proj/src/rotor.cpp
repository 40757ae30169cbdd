#include "chiralchain/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chiralchain/errors.hpp"
#include "chiralchain/parallel.hpp"
#include "chiralchain/wigner.hpp"

namespace chiralchain {

SectorBasis::SectorBasis(BasisTruncation trunc, int m) : m_(m), j_max_(trunc.j_max) {
  if (trunc.j_max < 1) throw std::invalid_argument("SectorBasis: j_max must be >= 1");
  if (std::abs(m) > trunc.j_max)
    throw std::invalid_argument("SectorBasis: |m| exceeds j_max");
  offsets_.assign(static_cast<std::size_t>(trunc.j_max) + 1, -1);
  for (int j = std::abs(m); j <= trunc.j_max; ++j) {
    offsets_[static_cast<std::size_t>(j)] = static_cast<int>(labels_.size());
    for (int k = -j; k <= j; ++k) labels_.emplace_back(j, k);
  }
}

int SectorBasis::index(int j, int k) const {
  if (j < std::abs(m_) || j > j_max_ || std::abs(k) > j) return -1;
  return offsets_[static_cast<std::size_t>(j)] + (k + j);
}

Eigen::MatrixXd build_rotor_block(const MoleculeSpec& mol, BasisTruncation trunc, int m) {
  const SectorBasis basis(trunc, m);
  const int n = basis.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  const double bc_half = 0.5 * (mol.B_mhz + mol.C_mhz);
  const double bc_quarter = 0.25 * (mol.B_mhz - mol.C_mhz);
  for (int i = 0; i < n; ++i) {
    const auto [j, k] = basis.label(i);
    const double jj = static_cast<double>(j * (j + 1));
    H(i, i) = bc_half * (jj - k * k) + mol.A_mhz * k * k;
    if (k + 2 <= j) {
      const int i2 = basis.index(j, k + 2);
      const double ladder = std::sqrt((jj - k * (k + 1)) * (jj - (k + 1) * (k + 2)));
      H(i, i2) = bc_quarter * ladder;
      H(i2, i) = H(i, i2);
    }
  }
  return H;
}

Eigen::MatrixXcd build_stark_block(const MoleculeSpec& mol, double x, BasisTruncation trunc, int m) {
  if (x < 0.0) throw std::invalid_argument("build_stark_block: x must be >= 0");
  const SectorBasis basis(trunc, m);
  const int n = basis.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  if (x == 0.0) return H;

  const double eps = x * mol.B_mhz / mol.d_tot(); // MHz per Debye
  const auto d = spherical_dipole_components(mol);

  for (int i = 0; i < n; ++i) {
    const auto [j, k] = basis.label(i);
    for (int i2 = i; i2 < n; ++i2) {
      const auto [j2, k2] = basis.label(i2);
      if (std::abs(j - j2) > 1 || std::abs(k - k2) > 1) continue;
      const int r = k - k2;
      const double dm = dmatrix_element({j, k, m}, 0, r, {j2, k2, m});
      if (dm == 0.0) continue;
      const std::complex<double> elem = -eps * d[static_cast<std::size_t>(r + 1)] * dm;
      H(i, i2) = elem;
      H(i2, i) = std::conj(elem);
    }
  }
  return H;
}

EigenSystem diagonalize_sector(const Eigen::MatrixXcd& H) {
  if (H.rows() != H.cols())
    throw ContractViolation("diagonalize_sector: matrix not square");
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  const double defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale)
    throw ContractViolation("diagonalize_sector: input not Hermitian within 1e-10");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success)
    throw ContractViolation("diagonalize_sector: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::complex<double> DressedLevel::coefficient(int j, int k) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].first == j && labels[i].second == k) return coeff(static_cast<Eigen::Index>(i));
  return {0.0, 0.0};
}

namespace {

struct Tracked {
  Eigen::VectorXcd v;
  double energy;
};

// Picks the eigenvector with maximal overlap against `prev` and rotates its
// phase so the overlap is real positive. Tie within 1e-9 is an error.
Tracked track_state(const Eigen::VectorXcd& prev, const EigenSystem& sys, double x) {
  const int n = static_cast<int>(sys.vectors.cols());
  int best = -1, second = -1;
  double best_ov = -1.0, second_ov = -1.0;
  std::complex<double> best_inner;
  for (int c = 0; c < n; ++c) {
    const std::complex<double> inner = prev.dot(sys.vectors.col(c));
    const double ov = std::abs(inner);
    if (ov > best_ov) {
      second = best;
      second_ov = best_ov;
      best = c;
      best_ov = ov;
      best_inner = inner;
    } else if (ov > second_ov) {
      second = c;
      second_ov = ov;
    }
  }
  if (second >= 0 && best_ov - second_ov < 1e-9)
    throw TrackingAmbiguity("dressed_states: adiabatic tracking overlap tie", x, best,
                            second, best_ov, second_ov);
  Eigen::VectorXcd v = sys.vectors.col(best);
  if (best_ov > 0.0) v *= std::conj(best_inner) / best_ov;
  return {std::move(v), sys.energies(best)};
}

// Phase-fix a fresh eigenvector so its dominant coefficient is real positive.
void fix_reference_phase(Eigen::VectorXcd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const std::complex<double> a = v(imax);
  if (std::abs(a) > 0.0) v *= std::conj(a) / std::abs(a);
}

} // namespace

std::vector<DressedPair> dressed_states(const MoleculeSpec& mol,
                                        const std::vector<double>& x_grid,
                                        BasisTruncation trunc, int workers) {
  if (x_grid.empty()) return {};
  if (!std::is_sorted(x_grid.begin(), x_grid.end()))
    throw std::invalid_argument("dressed_states: x grid must be ascending");

  const SectorBasis basis0(trunc, 0);
  const SectorBasis basis1(trunc, 1);
  const Eigen::MatrixXd rot0 = build_rotor_block(mol, trunc, 0);
  const Eigen::MatrixXd rot1 = build_rotor_block(mol, trunc, 1);

  const std::size_t nx = x_grid.size();
  std::vector<EigenSystem> sys0(nx), sys1(nx);
  parallel_for_index(nx, workers, [&](std::size_t i) {
    sys0[i] = diagonalize_sector(rot0.cast<std::complex<double>>() +
                                 build_stark_block(mol, x_grid[i], trunc, 0));
    sys1[i] = diagonalize_sector(rot1.cast<std::complex<double>>() +
                                 build_stark_block(mol, x_grid[i], trunc, 1));
  });

  // Sequential fix-up: anchor at the first grid point, then track.
  std::vector<DressedPair> out(nx);
  Eigen::VectorXcd v_up, v_dn;
  double e_up = 0.0, e_dn = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    if (i == 0) {
      // |up> is the m=0 state dominated by |j=0,k=0>; |down> is the m=1 state
      // dominated by |j=1,k=0>, the lowest j=1 level (energy B+C) at zero field.
      const int idx00 = basis0.index(0, 0);
      const int idx10 = basis1.index(1, 0);
      Eigen::Index b0 = 0, b1 = 0;
      sys0[i].vectors.row(idx00).cwiseAbs().maxCoeff(&b0);
      sys1[i].vectors.row(idx10).cwiseAbs().maxCoeff(&b1);
      v_up = sys0[i].vectors.col(b0);
      v_dn = sys1[i].vectors.col(b1);
      fix_reference_phase(v_up);
      fix_reference_phase(v_dn);
      e_up = sys0[i].energies(b0);
      e_dn = sys1[i].energies(b1);
    } else {
      Tracked tu = track_state(v_up, sys0[i], x_grid[i]);
      Tracked td = track_state(v_dn, sys1[i], x_grid[i]);
      v_up = std::move(tu.v);
      v_dn = std::move(td.v);
      e_up = tu.energy;
      e_dn = td.energy;
    }
    DressedLevel up{x_grid[i], 0, e_up, basis0.labels(), v_up};
    DressedLevel dn{x_grid[i], 1, e_dn, basis1.labels(), v_dn};
    out[i] = DressedPair{std::move(up), std::move(dn)};
  }
  return out;
}

DressedPair dressed_point(const MoleculeSpec& mol, double x, BasisTruncation trunc,
                          const DressedPair& anchor) {
  const SectorBasis basis0(trunc, 0);
  const SectorBasis basis1(trunc, 1);
  if (anchor.up.coeff.size() != basis0.size() || anchor.down.coeff.size() != basis1.size())
    throw std::invalid_argument("dressed_point: anchor truncation mismatch");
  const EigenSystem sys0 =
      diagonalize_sector(build_rotor_block(mol, trunc, 0).cast<std::complex<double>>() +
                         build_stark_block(mol, x, trunc, 0));
  const EigenSystem sys1 =
      diagonalize_sector(build_rotor_block(mol, trunc, 1).cast<std::complex<double>>() +
                         build_stark_block(mol, x, trunc, 1));
  const Tracked tu = track_state(anchor.up.coeff, sys0, x);
  const Tracked td = track_state(anchor.down.coeff, sys1, x);
  DressedPair out;
  out.up = DressedLevel{x, 0, tu.energy, basis0.labels(), tu.v};
  out.down = DressedLevel{x, 1, td.energy, basis1.labels(), td.v};
  return out;
}

std::vector<StarkMapRow> stark_map(const MoleculeSpec& mol, const std::vector<double>& x_grid,
                                   BasisTruncation trunc, const std::vector<int>& m_list,
                                   int workers) {
  std::vector<std::vector<Eigen::VectorXd>> spectra(x_grid.size());
  parallel_for_index(x_grid.size(), workers, [&](std::size_t i) {
    spectra[i].reserve(m_list.size());
    for (int m : m_list) {
      const Eigen::MatrixXcd H = build_rotor_block(mol, trunc, m).cast<std::complex<double>>() +
                                 build_stark_block(mol, x_grid[i], trunc, m);
      spectra[i].push_back(diagonalize_sector(H).energies);
    }
  });

  std::vector<StarkMapRow> rows;
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    for (std::size_t mi = 0; mi < m_list.size(); ++mi)
      for (Eigen::Index l = 0; l < spectra[i][mi].size(); ++l)
        rows.push_back({x_grid[i], m_list[mi], static_cast<int>(l),
                        spectra[i][mi](l) / mol.B_mhz});
  return rows;
}

double convergence_check(const MoleculeSpec& mol, double x, int j_max) {
  if (j_max < 2) throw std::invalid_argument("convergence_check: j_max must be >= 2");
  std::vector<double> grid;
  const int steps = std::max(1, static_cast<int>(std::ceil(x / 0.25)));
  for (int i = 0; i <= steps; ++i) grid.push_back(x * i / steps);

  const auto a = dressed_states(mol, grid, {j_max});
  const auto b = dressed_states(mol, grid, {j_max + 2});
  const auto& pa = a.back();
  const auto& pb = b.back();
  const double den_up = std::max(std::abs(pb.up.energy_mhz), mol.B_mhz);
  const double den_dn = std::max(std::abs(pb.down.energy_mhz), mol.B_mhz);
  return std::max(std::abs(pa.up.energy_mhz - pb.up.energy_mhz) / den_up,
                  std::abs(pa.down.energy_mhz - pb.down.energy_mhz) / den_dn);
}

} // namespace chiralchain
