#include "chiralchain/chain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chiralchain/errors.hpp"

namespace chiralchain {

namespace {

using cplx = std::complex<double>;

void check_ed_size(int n_sites, int ed_cap) {
  if (n_sites < 2) throw std::invalid_argument("chain: need at least 2 sites");
  if (n_sites > ed_cap)
    throw DimensionCapExceeded("chain: " + std::to_string(n_sites) +
                                   " sites exceeds the dense-ED cap of " +
                                   std::to_string(ed_cap),
                               n_sites, ed_cap);
}

struct BondCouplings {
  double jxy, d, jz, h;
};

BondCouplings bond_couplings(const ChainSpec& spec, bool include_dmi) {
  if (include_dmi)
    return {spec.couplings.j_xy_ghz, spec.couplings.d_ghz, spec.couplings.j_z_ghz,
            spec.couplings.h_ghz};
  const double jt = std::hypot(spec.couplings.j_xy_ghz, spec.couplings.d_ghz);
  return {jt, 0.0, spec.couplings.j_z_ghz, spec.couplings.h_ghz};
}

int spin_of(unsigned state, int site) { return (state >> site) & 1u ? 1 : -1; }

// Basis indices of one total-sigma_z sector.
std::vector<unsigned> sector_states(int n_sites, int n_up) {
  std::vector<unsigned> states;
  const unsigned dim = 1u << n_sites;
  for (unsigned s = 0; s < dim; ++s)
    if (std::popcount(s) == n_up) states.push_back(s);
  return states;
}

// Dense sector block of the chain Hamiltonian.
Eigen::MatrixXcd sector_hamiltonian(const ChainSpec& spec, const BondCouplings& b,
                                    const std::vector<unsigned>& states) {
  const int dim = static_cast<int>(states.size());
  std::vector<int> pos(1u << spec.n_sites, -1);
  for (int i = 0; i < dim; ++i) pos[states[static_cast<std::size_t>(i)]] = i;

  // Off-diagonal flip-flop amplitude: 2 (J_xy - i D) sigma^+_l sigma^-_{l+1}
  // plus the conjugate term.
  const cplx hop(2.0 * b.jxy, -2.0 * b.d);

  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const unsigned s = states[static_cast<std::size_t>(i)];
    double diag = 0.0;
    for (int l = 0; l < spec.n_sites; ++l) diag += b.h * spin_of(s, l);
    for (int l = 0; l + 1 < spec.n_sites; ++l) {
      diag += b.jz * spin_of(s, l) * spin_of(s, l + 1);
      const bool up_l = (s >> l) & 1u;
      const bool up_r = (s >> (l + 1)) & 1u;
      if (!up_l && up_r) {
        // sigma^+_l sigma^-_{l+1} maps s -> s'.
        const unsigned sp = (s | (1u << l)) & ~(1u << (l + 1));
        H(pos[sp], i) += hop;
        H(i, pos[sp]) += std::conj(hop);
      }
    }
    H(i, i) += diag;
  }
  return H;
}

} // namespace

Eigen::MatrixXcd build_chain_hamiltonian(const ChainSpec& spec, bool include_dmi, int ed_cap) {
  check_ed_size(spec.n_sites, ed_cap);
  const BondCouplings b = bond_couplings(spec, include_dmi);
  const unsigned dim = 1u << spec.n_sites;
  std::vector<unsigned> all(dim);
  for (unsigned s = 0; s < dim; ++s) all[s] = s;
  return sector_hamiltonian(spec, b, all);
}

GroundState ed_ground_state(const ChainSpec& spec, bool include_dmi, int ed_cap) {
  check_ed_size(spec.n_sites, ed_cap);
  const BondCouplings b = bond_couplings(spec, include_dmi);

  struct Candidate {
    double energy;
    Eigen::VectorXcd vec; // sector-local
    std::vector<unsigned> states;
    int n_up;
  };
  std::vector<Candidate> best;
  double e_min = std::numeric_limits<double>::infinity();

  for (int n_up = 0; n_up <= spec.n_sites; ++n_up) {
    const auto states = sector_states(spec.n_sites, n_up);
    const Eigen::MatrixXcd H = sector_hamiltonian(spec, b, states);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
      throw ContractViolation("ed_ground_state: eigensolver failed");
    // Keep every sector eigenstate within the degeneracy window of the
    // running minimum (the window is re-filtered at the end).
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
      const double e = solver.eigenvalues()(k);
      if (e < e_min + 1e-10) {
        best.push_back({e, solver.eigenvectors().col(k), states, n_up});
        e_min = std::min(e_min, e);
      }
      if (e > e_min + 1e-10) break; // ascending within the sector
    }
  }
  std::erase_if(best, [&](const Candidate& c) { return c.energy > e_min + 1e-10; });

  // Deterministic representative: smallest basis index of the dominant
  // amplitude wins; phase fixed real positive there.
  const auto dominant_index = [](const Candidate& c) {
    Eigen::Index arg = 0;
    double mx = -1.0;
    for (Eigen::Index i = 0; i < c.vec.size(); ++i) {
      const double a = std::abs(c.vec(i));
      if (a > mx + 1e-12) {
        mx = a;
        arg = i;
      }
    }
    return c.states[static_cast<std::size_t>(arg)];
  };
  std::size_t winner = 0;
  unsigned winner_key = dominant_index(best[0]);
  for (std::size_t i = 1; i < best.size(); ++i) {
    const unsigned key = dominant_index(best[i]);
    if (key < winner_key) {
      winner = i;
      winner_key = key;
    }
  }

  const Candidate& c = best[winner];
  GroundState g;
  g.energy_ghz = c.energy;
  g.degenerate = best.size() > 1;
  g.n_up = c.n_up;
  g.state = Eigen::VectorXcd::Zero(1 << spec.n_sites);
  for (std::size_t i = 0; i < c.states.size(); ++i)
    g.state(c.states[i]) = c.vec(static_cast<Eigen::Index>(i));
  // Phase fix at the dominant amplitude.
  const cplx a = g.state(winner_key);
  if (std::abs(a) > 0.0) g.state *= std::conj(a) / std::abs(a);
  return g;
}

Eigen::VectorXd ed_full_spectrum(const ChainSpec& spec, bool include_dmi, int ed_cap) {
  check_ed_size(spec.n_sites, ed_cap);
  const BondCouplings b = bond_couplings(spec, include_dmi);
  std::vector<double> all;
  all.reserve(1u << spec.n_sites);
  for (int n_up = 0; n_up <= spec.n_sites; ++n_up) {
    const auto states = sector_states(spec.n_sites, n_up);
    const Eigen::MatrixXcd H = sector_hamiltonian(spec, b, states);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
      throw ContractViolation("ed_full_spectrum: eigensolver failed");
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
      all.push_back(solver.eigenvalues()(k));
  }
  std::sort(all.begin(), all.end());
  Eigen::VectorXd out(static_cast<Eigen::Index>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i) out(static_cast<Eigen::Index>(i)) = all[i];
  return out;
}

CorrelationSet correlations_ed(const ChainSpec& spec, const Eigen::VectorXcd& state,
                               Frame frame) {
  const int n = spec.n_sites;
  if (state.size() != (1 << n))
    throw std::invalid_argument("correlations_ed: state dimension mismatch");
  CorrelationSet out;
  out.frame = frame;
  out.n_sites = n;
  out.sigma_pm = Eigen::MatrixXcd::Zero(n, n);
  const unsigned dim = 1u << n;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx v{0.0, 0.0};
      if (i == j) {
        for (unsigned s = 0; s < dim; ++s)
          if ((s >> i) & 1u) v += std::norm(state(s));
      } else {
        for (unsigned s = 0; s < dim; ++s) {
          // sigma_i^+ sigma_j^- needs site j up and site i down in |s>.
          if (!((s >> j) & 1u) || ((s >> i) & 1u)) continue;
          const unsigned sp = (s | (1u << i)) & ~(1u << j);
          v += std::conj(state(sp)) * state(s);
        }
      }
      out.sigma_pm(i, j) = v;
      out.sigma_pm(j, i) = std::conj(v);
    }
  return out;
}

Eigen::MatrixXd density_correlations_ed(int n_sites, const Eigen::VectorXcd& state) {
  if (state.size() != (1 << n_sites))
    throw std::invalid_argument("density_correlations_ed: state dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_sites, n_sites);
  const unsigned dim = 1u << n_sites;
  for (unsigned s = 0; s < dim; ++s) {
    const double w = std::norm(state(s));
    if (w == 0.0) continue;
    for (int i = 0; i < n_sites; ++i) {
      if (!((s >> i) & 1u)) continue;
      for (int j = 0; j < n_sites; ++j)
        if ((s >> j) & 1u) out(i, j) += w;
    }
  }
  return out;
}

CorrelationSet lab_frame_transform(const CorrelationSet& eff, double theta_rad) {
  if (eff.frame != Frame::Effective)
    throw ContractViolation("lab_frame_transform: input must be in the effective frame");
  CorrelationSet out = eff;
  out.frame = Frame::Laboratory;
  for (int i = 0; i < eff.n_sites; ++i)
    for (int j = 0; j < eff.n_sites; ++j)
      out.sigma_pm(i, j) = eff.sigma_pm(i, j) * std::polar(1.0, theta_rad * (j - i));
  return out;
}

// ---- free fermions ---------------------------------------------------------

namespace {

// <c^dag_l c_m> of the open XX chain ground state, J_tilde = 1, field h.
// Single-particle energies 2h + 4 cos(k pi/(N+1)); modes with negative energy
// are filled (exact zero modes stay empty).
Eigen::MatrixXd xx_mode_correlation(int n, double h) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  const double norm = 2.0 / (n + 1);
  for (int k = 1; k <= n; ++k) {
    const double eps = 2.0 * h + 4.0 * std::cos(M_PI * k / (n + 1));
    if (eps >= 0.0) continue;
    for (int l = 0; l < n; ++l) {
      const double pl = std::sin(M_PI * k * (l + 1) / (n + 1));
      for (int m = l; m < n; ++m) {
        const double v = norm * pl * std::sin(M_PI * k * (m + 1) / (n + 1));
        G(l, m) += v;
        if (m != l) G(m, l) += v;
      }
    }
  }
  return G;
}

// Pfaffian of a real antisymmetric matrix by skew-symmetric elimination with
// partial pivoting. Destroys its argument.
double pfaffian(Eigen::MatrixXd M) {
  const int n = static_cast<int>(M.rows());
  if (n % 2 != 0) return 0.0;
  double pf = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    // Pivot: largest |M(k, p)| with p > k.
    int p = k + 1;
    double mx = std::abs(M(k, p));
    for (int i = k + 2; i < n; ++i)
      if (std::abs(M(k, i)) > mx) {
        mx = std::abs(M(k, i));
        p = i;
      }
    if (mx == 0.0) return 0.0;
    if (p != k + 1) {
      M.row(p).swap(M.row(k + 1));
      M.col(p).swap(M.col(k + 1));
      pf = -pf;
    }
    const double c = M(k, k + 1);
    pf *= c;
    if (k + 2 >= n) break;
    for (int i = k + 2; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double upd = (M(k, i) * M(k + 1, j) - M(k + 1, i) * M(k, j)) / c;
        M(i, j) -= upd;
        M(j, i) = -M(i, j);
      }
    }
  }
  return pf;
}

// <sigma_i^+ sigma_j^-> for i < j from the Majorana contraction Pfaffian.
// Operator string: (A_i + B_i)/2 * prod_{l=i+1}^{j-1} (-B_l A_l) * (A_j - B_j)/2
// with A = c^dag + c, B = c^dag - c; only the B_i...A_j and A_i...B_j terms
// survive Wick pairing.
double sigma_pm_free_fermion(const Eigen::MatrixXd& G, int i, int j) {
  if (i == j) return G(i, i);
  if (i > j) std::swap(i, j); // value is real and symmetric

  const int L = j - i;
  // Operator tags: (site, type) with type 0 = A, 1 = B, in product order.
  std::vector<std::pair<int, int>> ops;
  ops.reserve(2 * static_cast<std::size_t>(L));

  const auto contraction = [&](const std::pair<int, int>& x, const std::pair<int, int>& y) {
    const auto [sx, tx] = x;
    const auto [sy, ty] = y;
    if (tx == 0 && ty == 0) return (sx == sy) ? 1.0 : 0.0;           // <A A>
    if (tx == 1 && ty == 1) return (sx == sy) ? -1.0 : 0.0;          // <B B>
    if (tx == 1 && ty == 0) return 2.0 * G(sx, sy) - (sx == sy);     // <B A>
    return (sx == sy) - 2.0 * G(sx, sy);                             // <A B>
  };

  const auto pf_of = [&](int first_type, int last_type) {
    ops.clear();
    ops.emplace_back(i, first_type);
    for (int l = i + 1; l < j; ++l) {
      ops.emplace_back(l, 1);
      ops.emplace_back(l, 0);
    }
    ops.emplace_back(j, last_type);
    const int m = static_cast<int>(ops.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        M(a, b) = contraction(ops[static_cast<std::size_t>(a)], ops[static_cast<std::size_t>(b)]);
        M(b, a) = -M(a, b);
      }
    return pfaffian(std::move(M));
  };

  const double sign = (L % 2 == 0) ? -1.0 : 1.0; // (-1)^(L-1)
  return sign * 0.25 * (pf_of(1, 0) - pf_of(0, 1));
}

void check_ff_size(int n_sites, int cap) {
  if (n_sites < 2) throw std::invalid_argument("free fermion chain: need at least 2 sites");
  if (n_sites > cap)
    throw DimensionCapExceeded("free fermion chain: " + std::to_string(n_sites) +
                                   " sites exceeds cap " + std::to_string(cap),
                               n_sites, cap);
}

} // namespace

CorrelationSet xx_correlations_free_fermion(int n_sites, double h_over_jtilde, int cap) {
  check_ff_size(n_sites, cap);
  const Eigen::MatrixXd G = xx_mode_correlation(n_sites, h_over_jtilde);
  CorrelationSet out;
  out.frame = Frame::Effective;
  out.n_sites = n_sites;
  out.sigma_pm = Eigen::MatrixXcd::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i)
    for (int j = i; j < n_sites; ++j) {
      const double v = sigma_pm_free_fermion(G, i, j);
      out.sigma_pm(i, j) = v;
      out.sigma_pm(j, i) = v;
    }
  return out;
}

std::vector<std::complex<double>> xx_correlation_row_free_fermion(int n_sites,
                                                                  double h_over_jtilde, int i0,
                                                                  int cap) {
  check_ff_size(n_sites, cap);
  if (i0 < 0 || i0 >= n_sites)
    throw std::invalid_argument("xx_correlation_row_free_fermion: row out of range");
  const Eigen::MatrixXd G = xx_mode_correlation(n_sites, h_over_jtilde);
  std::vector<std::complex<double>> row(static_cast<std::size_t>(n_sites));
  for (int j = 0; j < n_sites; ++j)
    row[static_cast<std::size_t>(j)] = sigma_pm_free_fermion(G, i0, j);
  return row;
}

Eigen::MatrixXd density_correlations_free_fermion(int n_sites, double h_over_jtilde, int cap) {
  check_ff_size(n_sites, cap);
  const Eigen::MatrixXd G = xx_mode_correlation(n_sites, h_over_jtilde);
  Eigen::MatrixXd out(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i)
    for (int j = 0; j < n_sites; ++j)
      out(i, j) = (i == j) ? G(i, i) : G(i, i) * G(j, j) - G(i, j) * G(j, i);
  return out;
}

std::vector<StructureFactorRow> structure_factor(const Eigen::MatrixXd& density_corr,
                                                 double spacing_nm,
                                                 const std::vector<double>& q_grid) {
  const int n = static_cast<int>(density_corr.rows());
  if (density_corr.cols() != n)
    throw ContractViolation("structure_factor: input must be square");
  if ((density_corr - density_corr.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ContractViolation("structure_factor: density correlations must be symmetric");

  std::vector<StructureFactorRow> out;
  out.reserve(q_grid.size());
  for (double q : q_grid) {
    cplx s{0.0, 0.0};
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        s += std::polar(1.0, -q * spacing_nm * (j - l)) * density_corr(j, l);
    s /= static_cast<double>(n);
    if (std::abs(s.imag()) > 1e-10)
      throw ContractViolation("structure_factor: imaginary residue above 1e-10");
    out.push_back({q, s.real()});
  }
  return out;
}

} // namespace chiralchain
