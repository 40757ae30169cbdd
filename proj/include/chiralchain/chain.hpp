#pragma once

// Open-boundary spin-1/2 chain solvers for
//   H = sum_j [ J_xy (sx sx + sy sy) - D (sx sy - sy sx) + J_z sz sz ]
//       + h sum_j sz_j                     (Pauli operators)
// Exact diagonalization with magnetization-sector blocking at small N, and
// exact free-fermion correlations on the J_z = 0 line via Jordan-Wigner with
// the string handled by a Pfaffian of Majorana contractions.
//
// Basis convention: site l maps to bit l (bit set = spin up), basis index is
// the bit pattern.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chiralchain/spin_model.hpp"

namespace chiralchain {

inline constexpr int kDefaultEdCap = 14;
inline constexpr int kDefaultFreeFermionCap = 200;

struct ChainSpec {
  int n_sites = 2;
  SpinCouplings couplings; // open boundary, nearest-neighbor
};

// Dense 2^N Hamiltonian. With include_dmi = false the DMI is absorbed:
// J_xy -> J_tilde, D -> 0 (the gauge-transformed chain).
Eigen::MatrixXcd build_chain_hamiltonian(const ChainSpec& spec, bool include_dmi,
                                         int ed_cap = kDefaultEdCap);

struct GroundState {
  double energy_ghz = 0.0;
  Eigen::VectorXcd state; // full 2^N vector, deterministic phase
  bool degenerate = false;
  int n_up = 0; // magnetization sector of the representative
};

// Sector-blocked ground-state search. Degeneracy within 1e-10 across
// candidates is flagged; the representative is the candidate whose dominant
// amplitude sits at the lexicographically smallest basis index, phase-fixed
// real positive there.
GroundState ed_ground_state(const ChainSpec& spec, bool include_dmi = true,
                            int ed_cap = kDefaultEdCap);

// All sector eigenvalues merged and sorted ascending (the full spectrum).
Eigen::VectorXd ed_full_spectrum(const ChainSpec& spec, bool include_dmi,
                                 int ed_cap = kDefaultEdCap);

enum class Frame { Effective, Laboratory };

struct CorrelationSet {
  Frame frame = Frame::Effective;
  int n_sites = 0;
  Eigen::MatrixXcd sigma_pm; // (i, j) -> <sigma_i^+ sigma_j^->
};

// <sigma_i^+ sigma_j^-> over all pairs for an ED state.
CorrelationSet correlations_ed(const ChainSpec& spec, const Eigen::VectorXcd& state,
                               Frame frame);

// <n_i n_j> over all pairs for an ED state (n = sigma^+ sigma^-).
Eigen::MatrixXd density_correlations_ed(int n_sites, const Eigen::VectorXcd& state);

// Multiplies entry (i, j) by e^{i theta (j - i)}. Input must be in the
// effective frame.
CorrelationSet lab_frame_transform(const CorrelationSet& eff, double theta_rad);

// Exact <sigma_i^+ sigma_j^-> of the open XX chain in a field (J_z = 0 line),
// all pairs. Correlations depend only on h / J_tilde.
CorrelationSet xx_correlations_free_fermion(int n_sites, double h_over_jtilde,
                                            int cap = kDefaultFreeFermionCap);

// Single row i0 of the same correlation set; cheap at large N.
std::vector<std::complex<double>> xx_correlation_row_free_fermion(
    int n_sites, double h_over_jtilde, int i0, int cap = kDefaultFreeFermionCap);

// <n_i n_j> on the J_z = 0 line by Wick's theorem.
Eigen::MatrixXd density_correlations_free_fermion(int n_sites, double h_over_jtilde,
                                                  int cap = kDefaultFreeFermionCap);

struct StructureFactorRow {
  double q_inv_nm = 0.0;
  double s = 0.0;
};

// S(q) = (1/N) sum_{j,l} e^{-i q (r_j - r_l)} <n_j n_l> with r_j = j * spacing.
// Input matrix must be symmetric; the imaginary residue of S is checked
// against 1e-10 and discarded.
std::vector<StructureFactorRow> structure_factor(const Eigen::MatrixXd& density_corr,
                                                 double spacing_nm,
                                                 const std::vector<double>& q_grid);

} // namespace chiralchain
