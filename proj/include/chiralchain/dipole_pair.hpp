#pragma once

// Dipole-dipole coupling between two Stark-dressed molecules with the
// intermolecular axis along the lab Z direction. Three lab-frame channels
// survive: (dm1, dm2) = (0,0) with weight 2, (-1,+1) and (+1,-1).
//
// Sign convention: dd_matrix_element carries the leading -1 of the physical
// element with r^3 (and 1/(4 pi eps0)) factored out, and the stored pair
// coefficients are the positive numbers appearing in
//   H_dd = -(1/r^3) [[C1,0,0,0],[0,C2,Cd1,0],[0,Cd2,C3,0],[0,0,0,C4]]
// on the dressed product basis {dn dn, dn up, up dn, up up}.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "chiralchain/molecule.hpp"
#include "chiralchain/rotor.hpp"
#include "chiralchain/wigner.hpp"

namespace chiralchain {

enum class PairConfiguration { LL, LR, RL, RR };

const char* to_string(PairConfiguration c);

struct EnantiomerPair {
  MoleculeSpec first;
  MoleculeSpec second;
  PairConfiguration configuration = PairConfiguration::RL;

  // Builds the two molecules from one base spec; the base's own handedness is
  // overridden by the configuration label.
  static EnantiomerPair make(PairConfiguration c, const MoleculeSpec& base);
  static EnantiomerPair make(PairConfiguration c) {
    return make(c, MoleculeSpec::propanediol(Handedness::L));
  }

  bool consistent() const;
};

struct PairCoefficients {
  double C1 = 0.0; // <dn dn| channel, Debye^2
  double C2 = 0.0; // <dn up|
  double C3 = 0.0; // <up dn|
  double C4 = 0.0; // <up up|
  std::complex<double> Cd1{0.0, 0.0}; // <dn up|H|up dn> exchange
  std::complex<double> Cd2{0.0, 0.0}; // <up dn|H|dn up> = conj(Cd1)
};

// r^3-stripped matrix element of H_dd between two-molecule |j k m> products,
// in Debye^2. Implements the three allowed channels; zero whenever
// m1 + m2 is not conserved.
std::complex<double> dd_matrix_element(const AngularLabel& bra1, const AngularLabel& bra2,
                                       const AngularLabel& ket1, const AngularLabel& ket2,
                                       const EnantiomerPair& pair);

// Dressed transition moment sum_{jk,j'k'} conj(c_bra) c_ket
// <j k m_bra|D^{1*}_{q, k-k'}|j' k' m_ket> d_{k-k'} for one molecule.
std::complex<double> dressed_transition_moment(int q, const DressedLevel& bra,
                                               const DressedLevel& ket,
                                               const MoleculeSpec& mol);

// Contracts dressed coefficients against the dipole-dipole channels. All four
// levels must sit at the same x; up levels carry m=0, down levels m=1.
PairCoefficients compute_pair_coefficients(const DressedLevel& up1, const DressedLevel& down1,
                                           const DressedLevel& up2, const DressedLevel& down2,
                                           const EnantiomerPair& pair);

// ---- Full product-basis oracle --------------------------------------------

// All (j, k, m) labels of one molecule up to j_max.
class FullMoleculeBasis {
public:
  explicit FullMoleculeBasis(BasisTruncation trunc);
  int size() const { return static_cast<int>(labels_.size()); }
  const AngularLabel& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  int index(int j, int k, int m) const;
  int j_max() const { return j_max_; }

private:
  int j_max_;
  std::vector<AngularLabel> labels_;
};

// Two-molecule product labels restricted to fixed M = m1 + m2, the exact
// block label of the full pair Hamiltonian.
class PairSectorBasis {
public:
  PairSectorBasis(const FullMoleculeBasis& mol, int m_total, long dimension_cap);
  int size() const { return static_cast<int>(pairs_.size()); }
  std::pair<int, int> pair(int i) const { return pairs_[static_cast<std::size_t>(i)]; }
  int m_total() const { return m_total_; }

private:
  int m_total_;
  std::vector<std::pair<int, int>> pairs_;
};

inline constexpr long kDefaultPairDimensionCap = 4096;

// H_dd over one M sector of the product basis, r^3 factored out, Debye^2.
Eigen::MatrixXcd build_pair_hdd_block(const EnantiomerPair& pair, BasisTruncation trunc,
                                      int m_total, long dimension_cap = kDefaultPairDimensionCap);

// Full two-molecule Hamiltonian H_rot(1) + H_rot(2) + H_dc(1) + H_dc(2) + H_dd
// over one M sector, in MHz, at separation r (nm). Brute-force oracle; keep
// j_max <= 3.
Eigen::MatrixXcd pair_hamiltonian_full(const EnantiomerPair& pair, double x,
                                       BasisTruncation trunc, double r_nm, int m_total,
                                       long dimension_cap = kDefaultPairDimensionCap);

// Eq. C14 path: projects the product-basis H_dd onto the four dressed product
// states (same truncation as the supplied levels) and reads the coefficients
// back out of the projected 4x4.
PairCoefficients project_pair_coefficients(const DressedLevel& up1, const DressedLevel& down1,
                                           const DressedLevel& up2, const DressedLevel& down2,
                                           const EnantiomerPair& pair, BasisTruncation trunc,
                                           long dimension_cap = kDefaultPairDimensionCap);

} // namespace chiralchain
