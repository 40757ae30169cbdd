#pragma once

// Single-molecule rotational problem: H_rot + H_dc in the truncated |j k m>
// basis. The dc field points along the lab Z axis, so m is an exact block
// label and every sector is diagonalized independently. Field strength is
// carried through the dimensionless x = d_tot * eps / B.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chiralchain/molecule.hpp"

namespace chiralchain {

struct BasisTruncation {
  int j_max = 8;
};

// Ordered (j, k) labels of one m sector, j = |m| .. j_max, k = -j .. j.
class SectorBasis {
public:
  SectorBasis(BasisTruncation trunc, int m);

  int m() const { return m_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::pair<int, int>>& labels() const { return labels_; }
  std::pair<int, int> label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  // -1 when (j, k) is not in the sector.
  int index(int j, int k) const;

private:
  int m_;
  int j_max_;
  std::vector<std::pair<int, int>> labels_;
  std::vector<int> offsets_; // per-j start index
};

// Rigid-rotor block for one m sector. Diagonal
//   <jk|H|jk> = (B+C)/2 * (j(j+1) - k^2) + A k^2
// and Delta k = +-2 ladder elements
//   <j,k+-2|H|j,k> = (B-C)/4 * sqrt((j(j+1)-k(k+-1))(j(j+1)-(k+-1)(k+-2))).
// No coupling between different j or different m. Energies in MHz.
Eigen::MatrixXd build_rotor_block(const MoleculeSpec& mol, BasisTruncation trunc, int m);

// Stark block for one m sector at dimensionless field x = d_tot * eps / B:
//   <jkm|H_dc|j'k'm> = -eps * sum_r d_r <jkm|D^{1*}_{0,r}|j'k'm>
// with complex body-frame components d_r. Complex Hermitian; couples only
// Delta j in {0,+-1}, Delta k in {0,+-1}. Energies in MHz.
Eigen::MatrixXcd build_stark_block(const MoleculeSpec& mol, double x, BasisTruncation trunc, int m);

struct EigenSystem {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd vectors;  // columns, orthonormal
};

// Dense Hermitian diagonalization. Throws ContractViolation when the input
// fails the Hermiticity contract (1e-10 relative on the largest element).
EigenSystem diagonalize_sector(const Eigen::MatrixXcd& H);

// One Stark-dressed eigenstate: energy plus expansion over (j, k) at fixed m.
struct DressedLevel {
  double x = 0.0;
  int m = 0;
  double energy_mhz = 0.0;
  std::vector<std::pair<int, int>> labels;
  Eigen::VectorXcd coeff;

  std::complex<double> coefficient(int j, int k) const;
  double weight(int j, int k) const {
    return std::norm(coefficient(j, k));
  }
  double norm2() const { return coeff.squaredNorm(); }
};

struct DressedPair {
  DressedLevel up;   // m = 0, connected to |j=0,k=0> at zero field
  DressedLevel down; // m = 1, connected to the lowest j=1 level at zero field
};

// Dressed pseudo-spin states over an ascending x grid starting at or near 0.
// Diagonalizations run as a parallel map over x; the adiabatic tracking pass
// (maximal overlap with the previous grid point, phases fixed so that
// <v_prev|v_new> > 0) is sequential. Throws TrackingAmbiguity on an overlap
// tie within 1e-9.
std::vector<DressedPair> dressed_states(const MoleculeSpec& mol,
                                        const std::vector<double>& x_grid,
                                        BasisTruncation trunc, int workers = 1);

// One off-grid point, tracked from an anchor pair at a nearby x. Used by
// root refinement between grid points.
DressedPair dressed_point(const MoleculeSpec& mol, double x, BasisTruncation trunc,
                          const DressedPair& anchor);

struct StarkMapRow {
  double x;
  int m;
  int level_index;
  double energy_over_B;
};

// Full sector spectra over (x, m) in deterministic (x, m, level) order,
// energies divided by B.
std::vector<StarkMapRow> stark_map(const MoleculeSpec& mol, const std::vector<double>& x_grid,
                                   BasisTruncation trunc, const std::vector<int>& m_list,
                                   int workers = 1);

// Max relative shift of (E_up, E_down) at field x when the truncation grows
// from j_max to j_max + 2.
double convergence_check(const MoleculeSpec& mol, double x, int j_max);

} // namespace chiralchain
