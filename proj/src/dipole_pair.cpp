#include "chiralchain/dipole_pair.hpp"

#include <cmath>
#include <stdexcept>

#include "chiralchain/constants.hpp"
#include "chiralchain/errors.hpp"

namespace chiralchain {

const char* to_string(PairConfiguration c) {
  switch (c) {
    case PairConfiguration::LL: return "LL";
    case PairConfiguration::LR: return "LR";
    case PairConfiguration::RL: return "RL";
    case PairConfiguration::RR: return "RR";
  }
  return "??";
}

EnantiomerPair EnantiomerPair::make(PairConfiguration c, const MoleculeSpec& base) {
  const MoleculeSpec l = (base.handedness == Handedness::L) ? base : base.mirror();
  const MoleculeSpec r = l.mirror();
  EnantiomerPair p;
  p.configuration = c;
  switch (c) {
    case PairConfiguration::LL: p.first = l; p.second = l; break;
    case PairConfiguration::LR: p.first = l; p.second = r; break;
    case PairConfiguration::RL: p.first = r; p.second = l; break;
    case PairConfiguration::RR: p.first = r; p.second = r; break;
  }
  return p;
}

bool EnantiomerPair::consistent() const {
  const auto expects = [](PairConfiguration c) -> std::pair<Handedness, Handedness> {
    switch (c) {
      case PairConfiguration::LL: return {Handedness::L, Handedness::L};
      case PairConfiguration::LR: return {Handedness::L, Handedness::R};
      case PairConfiguration::RL: return {Handedness::R, Handedness::L};
      default: return {Handedness::R, Handedness::R};
    }
  };
  const auto [h1, h2] = expects(configuration);
  return first.handedness == h1 && second.handedness == h2;
}

std::complex<double> dd_matrix_element(const AngularLabel& bra1, const AngularLabel& bra2,
                                       const AngularLabel& ket1, const AngularLabel& ket2,
                                       const EnantiomerPair& pair) {
  const int dm1 = bra1.m - ket1.m;
  const int dm2 = bra2.m - ket2.m;
  if (dm1 + dm2 != 0 || std::abs(dm1) > 1) return {0.0, 0.0};
  const int dk1 = bra1.k - ket1.k;
  const int dk2 = bra2.k - ket2.k;
  if (std::abs(dk1) > 1 || std::abs(dk2) > 1) return {0.0, 0.0};

  const double weight = (dm1 == 0) ? 2.0 : 1.0;
  const double g1 = dmatrix_element(bra1, dm1, dk1, ket1);
  if (g1 == 0.0) return {0.0, 0.0};
  const double g2 = dmatrix_element(bra2, dm2, dk2, ket2);
  if (g2 == 0.0) return {0.0, 0.0};

  const auto d1 = spherical_dipole_components(pair.first);
  const auto d2 = spherical_dipole_components(pair.second);
  return -weight * g1 * g2 * d1[static_cast<std::size_t>(dk1 + 1)] *
         d2[static_cast<std::size_t>(dk2 + 1)];
}

std::complex<double> dressed_transition_moment(int q, const DressedLevel& bra,
                                               const DressedLevel& ket,
                                               const MoleculeSpec& mol) {
  if (bra.m != q + ket.m)
    throw std::invalid_argument("dressed_transition_moment: m selection rule violated");
  const auto d = spherical_dipole_components(mol);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t a = 0; a < bra.labels.size(); ++a) {
    const auto [j, k] = bra.labels[a];
    const std::complex<double> cb = std::conj(bra.coeff(static_cast<Eigen::Index>(a)));
    if (std::abs(cb) == 0.0) continue;
    for (std::size_t b = 0; b < ket.labels.size(); ++b) {
      const auto [jp, kp] = ket.labels[b];
      if (std::abs(j - jp) > 1 || std::abs(k - kp) > 1) continue;
      const double g = dmatrix_element({j, k, bra.m}, q, k - kp, {jp, kp, ket.m});
      if (g == 0.0) continue;
      sum += cb * ket.coeff(static_cast<Eigen::Index>(b)) * g *
             d[static_cast<std::size_t>(k - kp + 1)];
    }
  }
  return sum;
}

PairCoefficients compute_pair_coefficients(const DressedLevel& up1, const DressedLevel& down1,
                                           const DressedLevel& up2, const DressedLevel& down2,
                                           const EnantiomerPair& pair) {
  if (up1.x != down1.x || up1.x != up2.x || up1.x != down2.x)
    throw std::invalid_argument("compute_pair_coefficients: mismatched x between dressed levels");
  if (up1.m != 0 || up2.m != 0 || down1.m != 1 || down2.m != 1)
    throw std::invalid_argument("compute_pair_coefficients: up levels must have m=0, down m=1");

  // Each coefficient factorizes into per-molecule transition moments; the
  // channel weight 2 sits on the static q=0 channel, the leading minus of the
  // matrix element and the minus of the C convention cancel.
  const std::complex<double> s1_dn = dressed_transition_moment(0, down1, down1, pair.first);
  const std::complex<double> s1_up = dressed_transition_moment(0, up1, up1, pair.first);
  const std::complex<double> s2_dn = dressed_transition_moment(0, down2, down2, pair.second);
  const std::complex<double> s2_up = dressed_transition_moment(0, up2, up2, pair.second);

  const std::complex<double> t1_plus = dressed_transition_moment(+1, down1, up1, pair.first);
  const std::complex<double> t1_minus = dressed_transition_moment(-1, up1, down1, pair.first);
  const std::complex<double> t2_plus = dressed_transition_moment(+1, down2, up2, pair.second);
  const std::complex<double> t2_minus = dressed_transition_moment(-1, up2, down2, pair.second);

  PairCoefficients c;
  c.C1 = 2.0 * (s1_dn * s2_dn).real();
  c.C2 = 2.0 * (s1_dn * s2_up).real();
  c.C3 = 2.0 * (s1_up * s2_dn).real();
  c.C4 = 2.0 * (s1_up * s2_up).real();
  c.Cd1 = t1_plus * t2_minus;
  c.Cd2 = t1_minus * t2_plus;
  return c;
}

// ---- Full product-basis oracle --------------------------------------------

FullMoleculeBasis::FullMoleculeBasis(BasisTruncation trunc) : j_max_(trunc.j_max) {
  for (int j = 0; j <= trunc.j_max; ++j)
    for (int k = -j; k <= j; ++k)
      for (int m = -j; m <= j; ++m) labels_.push_back({j, k, m});
}

int FullMoleculeBasis::index(int j, int k, int m) const {
  if (j < 0 || j > j_max_ || std::abs(k) > j || std::abs(m) > j) return -1;
  // Offset of block j is sum_{l<j} (2l+1)^2.
  int off = 0;
  for (int l = 0; l < j; ++l) off += (2 * l + 1) * (2 * l + 1);
  return off + (k + j) * (2 * j + 1) + (m + j);
}

PairSectorBasis::PairSectorBasis(const FullMoleculeBasis& mol, int m_total, long dimension_cap)
    : m_total_(m_total) {
  for (int a = 0; a < mol.size(); ++a)
    for (int b = 0; b < mol.size(); ++b)
      if (mol.label(a).m + mol.label(b).m == m_total) pairs_.emplace_back(a, b);
  if (static_cast<long>(pairs_.size()) > dimension_cap)
    throw DimensionCapExceeded("PairSectorBasis: product sector dimension " +
                                   std::to_string(pairs_.size()) + " exceeds cap " +
                                   std::to_string(dimension_cap),
                               static_cast<long>(pairs_.size()), dimension_cap);
}

Eigen::MatrixXcd build_pair_hdd_block(const EnantiomerPair& pair, BasisTruncation trunc,
                                      int m_total, long dimension_cap) {
  const FullMoleculeBasis mol(trunc);
  const PairSectorBasis sector(mol, m_total, dimension_cap);
  const int n = sector.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const auto [a, b] = sector.pair(row);
    for (int col = 0; col < n; ++col) {
      const auto [ap, bp] = sector.pair(col);
      H(row, col) = dd_matrix_element(mol.label(a), mol.label(b), mol.label(ap),
                                      mol.label(bp), pair);
    }
  }
  return H;
}

namespace {

// 1/(4 pi eps0 r^3) for 1 Debye^2, expressed in MHz.
double dd_scale_mhz_per_debye2(double r_nm) {
  const double joules = constants::dipole_pair_J_per_debye2_nm3 / (r_nm * r_nm * r_nm);
  return joules / constants::planck_J_s * 1e-6;
}

// Single-molecule H_rot + H_dc over the full (j,k,m) basis, MHz.
Eigen::MatrixXcd full_single_molecule(const MoleculeSpec& mol, double x, BasisTruncation trunc,
                                      const FullMoleculeBasis& basis) {
  const int n = basis.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int m = -trunc.j_max; m <= trunc.j_max; ++m) {
    const SectorBasis sb(trunc, m);
    const Eigen::MatrixXcd block = build_rotor_block(mol, trunc, m).cast<std::complex<double>>() +
                                   build_stark_block(mol, x, trunc, m);
    for (int i = 0; i < sb.size(); ++i) {
      const auto [ji, ki] = sb.label(i);
      const int gi = basis.index(ji, ki, m);
      for (int j = 0; j < sb.size(); ++j) {
        const auto [jj, kj] = sb.label(j);
        H(gi, basis.index(jj, kj, m)) = block(i, j);
      }
    }
  }
  return H;
}

} // namespace

Eigen::MatrixXcd pair_hamiltonian_full(const EnantiomerPair& pair, double x,
                                       BasisTruncation trunc, double r_nm, int m_total,
                                       long dimension_cap) {
  if (r_nm <= 0.0) throw std::invalid_argument("pair_hamiltonian_full: r must be positive");
  const FullMoleculeBasis mol(trunc);
  const PairSectorBasis sector(mol, m_total, dimension_cap);
  const Eigen::MatrixXcd h1 = full_single_molecule(pair.first, x, trunc, mol);
  const Eigen::MatrixXcd h2 = full_single_molecule(pair.second, x, trunc, mol);
  const double dd_mhz = dd_scale_mhz_per_debye2(r_nm);

  const int n = sector.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  for (int row = 0; row < n; ++row) {
    const auto [a, b] = sector.pair(row);
    for (int col = 0; col < n; ++col) {
      const auto [ap, bp] = sector.pair(col);
      std::complex<double> v =
          dd_mhz * dd_matrix_element(mol.label(a), mol.label(b), mol.label(ap), mol.label(bp), pair);
      if (b == bp) v += h1(a, ap);
      if (a == ap) v += h2(b, bp);
      H(row, col) = v;
    }
  }
  return H;
}

PairCoefficients project_pair_coefficients(const DressedLevel& up1, const DressedLevel& down1,
                                           const DressedLevel& up2, const DressedLevel& down2,
                                           const EnantiomerPair& pair, BasisTruncation trunc,
                                           long dimension_cap) {
  const FullMoleculeBasis mol(trunc);

  // Embed one dressed level into the full single-molecule basis.
  const auto embed = [&](const DressedLevel& lvl) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(mol.size());
    for (std::size_t i = 0; i < lvl.labels.size(); ++i) {
      const auto [j, k] = lvl.labels[i];
      const int gi = mol.index(j, k, lvl.m);
      if (gi < 0)
        throw std::invalid_argument("project_pair_coefficients: dressed level exceeds truncation");
      v(gi) = lvl.coeff(static_cast<Eigen::Index>(i));
    }
    return v;
  };
  const Eigen::VectorXcd u1 = embed(up1), d1 = embed(down1);
  const Eigen::VectorXcd u2 = embed(up2), d2 = embed(down2);

  // Product vector on an M sector.
  const auto product = [&](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                           const PairSectorBasis& sector) {
    Eigen::VectorXcd v(sector.size());
    for (int i = 0; i < sector.size(); ++i) {
      const auto [ia, ib] = sector.pair(i);
      v(i) = a(ia) * b(ib);
    }
    return v;
  };

  PairCoefficients c;
  {
    const PairSectorBasis s2(mol, 2, dimension_cap);
    const Eigen::MatrixXcd hdd = build_pair_hdd_block(pair, trunc, 2, dimension_cap);
    const Eigen::VectorXcd dd = product(d1, d2, s2);
    c.C1 = -(dd.adjoint() * hdd * dd)(0).real();
  }
  {
    const PairSectorBasis s1(mol, 1, dimension_cap);
    const Eigen::MatrixXcd hdd = build_pair_hdd_block(pair, trunc, 1, dimension_cap);
    const Eigen::VectorXcd du = product(d1, u2, s1);
    const Eigen::VectorXcd ud = product(u1, d2, s1);
    c.C2 = -(du.adjoint() * hdd * du)(0).real();
    c.C3 = -(ud.adjoint() * hdd * ud)(0).real();
    c.Cd1 = -(du.adjoint() * hdd * ud)(0);
    c.Cd2 = -(ud.adjoint() * hdd * du)(0);
  }
  {
    const PairSectorBasis s0(mol, 0, dimension_cap);
    const Eigen::MatrixXcd hdd = build_pair_hdd_block(pair, trunc, 0, dimension_cap);
    const Eigen::VectorXcd uu = product(u1, u2, s0);
    c.C4 = -(uu.adjoint() * hdd * uu)(0).real();
  }
  return c;
}

} // namespace chiralchain
