#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "chiralchain/constants.hpp"
#include "chiralchain/dipole_pair.hpp"
#include "chiralchain/errors.hpp"

using namespace chiralchain;
using cplx = std::complex<double>;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

// Brute-force contraction of the C sums straight over dd_matrix_element,
// independent of the factorized production path.
PairCoefficients naive_pair_coefficients(const DressedLevel& up1, const DressedLevel& down1,
                                         const DressedLevel& up2, const DressedLevel& down2,
                                         const EnantiomerPair& pair) {
  const auto contract = [&](const DressedLevel& b1, const DressedLevel& k1,
                            const DressedLevel& b2, const DressedLevel& k2) {
    cplx sum{0.0, 0.0};
    for (std::size_t a = 0; a < b1.labels.size(); ++a)
      for (std::size_t ap = 0; ap < k1.labels.size(); ++ap)
        for (std::size_t b = 0; b < b2.labels.size(); ++b)
          for (std::size_t bp = 0; bp < k2.labels.size(); ++bp) {
            const AngularLabel l1{b1.labels[a].first, b1.labels[a].second, b1.m};
            const AngularLabel l1p{k1.labels[ap].first, k1.labels[ap].second, k1.m};
            const AngularLabel l2{b2.labels[b].first, b2.labels[b].second, b2.m};
            const AngularLabel l2p{k2.labels[bp].first, k2.labels[bp].second, k2.m};
            const cplx elem = dd_matrix_element(l1, l2, l1p, l2p, pair);
            if (elem == cplx{0.0, 0.0}) continue;
            sum += std::conj(b1.coeff(static_cast<Eigen::Index>(a))) *
                   k1.coeff(static_cast<Eigen::Index>(ap)) *
                   std::conj(b2.coeff(static_cast<Eigen::Index>(b))) *
                   k2.coeff(static_cast<Eigen::Index>(bp)) * elem;
          }
    return sum;
  };
  PairCoefficients c;
  c.C1 = -contract(down1, down1, down2, down2).real();
  c.C2 = -contract(down1, down1, up2, up2).real();
  c.C3 = -contract(up1, up1, down2, down2).real();
  c.C4 = -contract(up1, up1, up2, up2).real();
  c.Cd1 = -contract(down1, up1, up2, down2);
  c.Cd2 = -contract(up1, down1, down2, up2);
  return c;
}

struct DressedSet {
  std::vector<DressedPair> first;
  std::vector<DressedPair> second;
};

DressedSet dress(const EnantiomerPair& pair, const std::vector<double>& grid, int j_max) {
  return {dressed_states(pair.first, grid, {j_max}),
          dressed_states(pair.second, grid, {j_max})};
}

PairCoefficients at(const DressedSet& d, std::size_t i, const EnantiomerPair& pair) {
  return compute_pair_coefficients(d.first[i].up, d.first[i].down, d.second[i].up,
                                   d.second[i].down, pair);
}

} // namespace

TEST_CASE("spherical dipole components") {
  const auto l = spherical_dipole_components(MoleculeSpec::propanediol(Handedness::L));
  const auto r = spherical_dipole_components(MoleculeSpec::propanediol(Handedness::R));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(l[2].real() == doctest::Approx(-1.916 * s).epsilon(1e-14));
  CHECK(l[2].imag() == doctest::Approx(-0.365 * s).epsilon(1e-14));
  CHECK(l[1] == cplx(1.201, 0.0));
  CHECK(r[2].real() == doctest::Approx(-1.916 * s).epsilon(1e-14));
  CHECK(r[2].imag() == doctest::Approx(+0.365 * s).epsilon(1e-14));

  MoleculeSpec achiral = MoleculeSpec::propanediol(Handedness::L);
  achiral.d_c = 0.0;
  const auto a = spherical_dipole_components(achiral);
  CHECK(a[0].imag() == 0.0);
  CHECK(a[2].imag() == 0.0);
}

TEST_CASE("dd matrix element: channels and fixtures") {
  const auto pair = EnantiomerPair::make(PairConfiguration::LL);
  const double da = pair.first.d_a;

  // Total lab-frame projection must be conserved: (dm1, dm2) = (+1, +1) -> 0.
  CHECK(dd_matrix_element({1, 0, 1}, {1, 0, 1}, {1, 0, 0}, {1, 0, 0}, pair) == cplx(0.0, 0.0));

  // q=0 channel with weight 2: <000,000|.|100,100> = -(2/3) d_a^2.
  const cplx v = dd_matrix_element({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}, pair);
  CHECK(v.real() == doctest::Approx(-2.0 / 3.0 * da * da).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("dd matrix element: enantiomer order flip conjugates the exchange channel") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto lr = EnantiomerPair::make(PairConfiguration::LR);
  // (dm1, dm2) = (+1, -1) with transverse dk = +1 / -1: the d+ d- interference.
  const AngularLabel b1{1, 1, 1}, k1{0, 0, 0}, b2{0, 0, 0}, k2{1, 1, 1};
  const cplx v_rl = dd_matrix_element(b1, b2, k1, k2, rl);
  const cplx v_lr = dd_matrix_element(b1, b2, k1, k2, lr);
  REQUIRE(std::abs(v_rl) > 0.0);
  CHECK(v_lr.real() == doctest::Approx(v_rl.real()).epsilon(1e-13));
  CHECK(v_lr.imag() == doctest::Approx(-v_rl.imag()).epsilon(1e-13));
}

TEST_CASE("dd matrix element conserves m1+m2 on an exhaustive j<=1 scan") {
  const auto pair = EnantiomerPair::make(PairConfiguration::RL);
  std::vector<AngularLabel> labels;
  for (int j = 0; j <= 1; ++j)
    for (int k = -j; k <= j; ++k)
      for (int m = -j; m <= j; ++m) labels.push_back({j, k, m});
  for (const auto& a : labels)
    for (const auto& b : labels)
      for (const auto& ap : labels)
        for (const auto& bp : labels)
          if (a.m + b.m != ap.m + bp.m)
            CHECK(dd_matrix_element(a, b, ap, bp, pair) == cplx(0.0, 0.0));
}

TEST_CASE("pair coefficients: structure across configurations") {
  const auto grid = linspace(0.0, 2.0, 5);
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto lr = EnantiomerPair::make(PairConfiguration::LR);
  const auto ll = EnantiomerPair::make(PairConfiguration::LL);
  const auto rr = EnantiomerPair::make(PairConfiguration::RR);
  const auto drl = dress(rl, grid, 5);
  const auto dlr = dress(lr, grid, 5);
  const auto dll = dress(ll, grid, 5);
  const auto drr = dress(rr, grid, 5);

  // Zero field: all static coefficients vanish.
  const auto c0 = at(drl, 0, rl);
  CHECK(std::abs(c0.C1) < 1e-12);
  CHECK(std::abs(c0.C2) < 1e-12);
  CHECK(std::abs(c0.C3) < 1e-12);
  CHECK(std::abs(c0.C4) < 1e-12);
  CHECK(std::abs(c0.Cd1.imag()) < 1e-12);

  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto c_rl = at(drl, i, rl);
    const auto c_lr = at(dlr, i, lr);
    const auto c_ll = at(dll, i, ll);
    const auto c_rr = at(drr, i, rr);

    // Hermiticity of the dressed 4x4 and the C2 = C3 symmetry.
    for (const auto& c : {c_rl, c_lr, c_ll, c_rr}) {
      CHECK(std::abs(c.Cd2 - std::conj(c.Cd1)) < 1e-10);
      CHECK(c.C2 == doctest::Approx(c.C3).epsilon(1e-10));
    }
    // Homochiral pairs carry a purely real exchange.
    CHECK(std::abs(c_ll.Cd1.imag()) < 1e-10);
    CHECK(std::abs(c_rr.Cd1.imag()) < 1e-10);
    // Heterochiral order flip reverses the interference term.
    CHECK(c_rl.Cd1.imag() == doctest::Approx(-c_lr.Cd1.imag()).epsilon(1e-10));
    CHECK(c_rl.Cd1.real() == doctest::Approx(c_lr.Cd1.real()).epsilon(1e-10));
    CHECK(std::abs(c_rl.Cd1.imag()) > 0.0);
  }
}

TEST_CASE("pair coefficients: growth, saturation, like/cross ordering") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 20.0, 81);
  const auto d = dress(rl, grid, 8);

  std::vector<PairCoefficients> cs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) cs[i] = at(d, i, rl);

  // Monotone growth of every diagonal coefficient on x in [0, 6].
  for (std::size_t i = 1; grid[i] <= 6.0; ++i) {
    CHECK(cs[i].C1 > cs[i - 1].C1);
    CHECK(cs[i].C2 > cs[i - 1].C2);
    CHECK(cs[i].C4 > cs[i - 1].C4);
  }
  // Saturation: increments per unit x keep shrinking on [10, 20].
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i - 1] < 10.0) continue;
    const double prev = cs[i].C1 - cs[i - 1].C1;
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      if (grid[j] > grid[i]) {
        CHECK(cs[j].C1 - cs[j - 1].C1 < prev + 1e-12);
        break;
      }
  }
  // The dressed moments factorize, so C2 is the geometric mean of C1 and C4
  // and sits strictly between them: C1 >= C2 = C3 >= C4.
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(cs[i].C1 >= cs[i].C2 - 1e-12);
    CHECK(cs[i].C2 >= cs[i].C4 - 1e-12);
    CHECK(cs[i].C2 * cs[i].C2 == doctest::Approx(cs[i].C1 * cs[i].C4).epsilon(1e-10));
  }
  // Interference term: zero at x=0, one interior maximum, decay at large x.
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (cs[i].Cd1.imag() > cs[argmax].Cd1.imag()) argmax = i;
  CHECK(argmax > 0);
  CHECK(argmax + 1 < grid.size());
  for (std::size_t i = 1; i <= argmax; ++i) CHECK(cs[i].Cd1.imag() >= cs[i - 1].Cd1.imag() - 1e-12);
  for (std::size_t i = argmax + 1; i < grid.size(); ++i)
    CHECK(cs[i].Cd1.imag() <= cs[i - 1].Cd1.imag() + 1e-12);
}

TEST_CASE("pair coefficients match the brute-force contraction at j_max=2") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 1.5, 4);
  const auto d = dress(rl, grid, 2);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto fast = at(d, i, rl);
    const auto slow = naive_pair_coefficients(d.first[i].up, d.first[i].down, d.second[i].up,
                                              d.second[i].down, rl);
    CHECK(fast.C1 == doctest::Approx(slow.C1).epsilon(1e-12));
    CHECK(fast.C2 == doctest::Approx(slow.C2).epsilon(1e-12));
    CHECK(fast.C3 == doctest::Approx(slow.C3).epsilon(1e-12));
    CHECK(fast.C4 == doctest::Approx(slow.C4).epsilon(1e-12));
    CHECK(std::abs(fast.Cd1 - slow.Cd1) < 1e-12);
    CHECK(std::abs(fast.Cd2 - slow.Cd2) < 1e-12);
  }
}

TEST_CASE("projection through the product-basis oracle equals the contraction") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 2.0, 3);
  const auto d = dress(rl, grid, 3);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto fast = at(d, i, rl);
    const auto proj = project_pair_coefficients(d.first[i].up, d.first[i].down, d.second[i].up,
                                                d.second[i].down, rl, {3}, 20000);
    CHECK(proj.C1 == doctest::Approx(fast.C1).epsilon(1e-12));
    CHECK(proj.C2 == doctest::Approx(fast.C2).epsilon(1e-12));
    CHECK(proj.C3 == doctest::Approx(fast.C3).epsilon(1e-12));
    CHECK(proj.C4 == doctest::Approx(fast.C4).epsilon(1e-12));
    CHECK(std::abs(proj.Cd1 - fast.Cd1) < 1e-12);
  }
}

TEST_CASE("oracle truncation error shrinks from j_max=2 to j_max=3") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 2.0, 5);
  const auto ref = dress(rl, grid, 8);
  double err[2] = {0.0, 0.0};
  for (int K : {2, 3}) {
    const auto dk = dress(rl, grid, K);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const auto a = at(ref, i, rl);
      const auto b = project_pair_coefficients(dk.first[i].up, dk.first[i].down, dk.second[i].up,
                                               dk.second[i].down, rl, {K}, 20000);
      const double e = std::max({std::fabs(a.C1 - b.C1) / std::fabs(a.C1),
                                 std::fabs(a.C4 - b.C4) / std::fabs(a.C4),
                                 std::abs(a.Cd1 - b.Cd1) / std::abs(a.Cd1)});
      err[K - 2] = std::max(err[K - 2], e);
    }
  }
  CHECK(err[1] < err[0]);
  CHECK(err[1] < 1e-3);
}

TEST_CASE("full pair Hamiltonian: decoupled limit and dimension cap") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  // r so large the dipole shift is immeasurable: ground energy stays 0.
  const Eigen::MatrixXcd H = pair_hamiltonian_full(rl, 0.0, {1}, 1e6, 0);
  const auto sys = diagonalize_sector(H);
  CHECK(std::abs(sys.energies(0)) < 1e-12);

  CHECK_THROWS_AS(pair_hamiltonian_full(rl, 0.0, {3}, 1.0, 1, 100), DimensionCapExceeded);
}

TEST_CASE("full pair Hamiltonian: spectrum is the sum of single-molecule levels when decoupled") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const BasisTruncation trunc{2};
  const double x = 0.8;

  // Per-molecule sector energies.
  const auto energies_of = [&](const MoleculeSpec& mol, int m) {
    return diagonalize_sector(build_rotor_block(mol, trunc, m).cast<std::complex<double>>() +
                              build_stark_block(mol, x, trunc, m))
        .energies;
  };
  std::vector<double> sums;
  for (int m1 = -trunc.j_max; m1 <= trunc.j_max; ++m1) {
    const int m2 = -m1; // M = 0 sector
    const auto e1 = energies_of(rl.first, m1);
    const auto e2 = energies_of(rl.second, m2);
    for (Eigen::Index a = 0; a < e1.size(); ++a)
      for (Eigen::Index b = 0; b < e2.size(); ++b) sums.push_back(e1(a) + e2(b));
  }
  std::sort(sums.begin(), sums.end());

  const auto sys = diagonalize_sector(pair_hamiltonian_full(rl, x, trunc, 1e6, 0, 20000));
  REQUIRE(static_cast<std::size_t>(sys.energies.size()) == sums.size());
  for (Eigen::Index i = 0; i < sys.energies.size(); ++i)
    CHECK(std::abs(sys.energies(i) - sums[static_cast<std::size_t>(i)]) < 1e-6);
}

TEST_CASE("dressed 4x4 model matches the full two-molecule spectrum at large r") {
  // End-to-end check of the unit chain (MHz dressed energies, Debye^2
  // coefficients, the 1/(4 pi eps0 r^3) scale): the {dn up, up dn} doublet of
  // the full Hamiltonian must reproduce the model's center and flip-flop
  // splitting up to leakage out of the two-level manifold, which is second
  // order in the interaction and therefore scales as 1/r^6.
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const BasisTruncation trunc{2};
  const double x = 1.0;
  const std::vector<double> grid{0.0, 0.5, 1.0};

  const auto d1 = dressed_states(rl.first, grid, trunc);
  const auto d2 = dressed_states(rl.second, grid, trunc);
  const auto& p1 = d1.back();
  const auto& p2 = d2.back();
  const auto coeffs = compute_pair_coefficients(p1.up, p1.down, p2.up, p2.down, rl);

  const FullMoleculeBasis mol(trunc);
  const PairSectorBasis sector(mol, 1, 20000);
  const auto embed = [&](const DressedLevel& a, const DressedLevel& b) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sector.size());
    for (int i = 0; i < sector.size(); ++i) {
      const auto [ia, ib] = sector.pair(i);
      const auto la = mol.label(ia);
      const auto lb = mol.label(ib);
      if (la.m != a.m || lb.m != b.m) continue;
      v(i) = a.coefficient(la.j, la.k) * b.coefficient(lb.j, lb.k);
    }
    return v;
  };
  const Eigen::VectorXcd du = embed(p1.down, p2.up);
  const Eigen::VectorXcd ud = embed(p1.up, p2.down);

  // (center offset, splitting relative error) of the doublet at one r.
  const auto doublet_errors = [&](double r_nm) {
    const double dd_mhz = chiralchain::constants::dipole_pair_J_per_debye2_nm3 /
                          chiralchain::constants::planck_J_s * 1e-6 / (r_nm * r_nm * r_nm);
    const double center = p1.down.energy_mhz + p1.up.energy_mhz -
                          dd_mhz * 0.5 * (coeffs.C2 + coeffs.C3);
    const double split = 2.0 * dd_mhz * std::abs(coeffs.Cd1);
    const auto sys = diagonalize_sector(pair_hamiltonian_full(rl, x, trunc, r_nm, 1, 20000));
    std::vector<std::pair<double, double>> weighted; // (overlap weight, energy)
    for (Eigen::Index c = 0; c < sys.vectors.cols(); ++c) {
      const double w = std::norm(du.dot(sys.vectors.col(c))) +
                       std::norm(ud.dot(sys.vectors.col(c)));
      weighted.emplace_back(w, sys.energies(c));
    }
    std::sort(weighted.rbegin(), weighted.rend());
    REQUIRE(weighted[0].first > 0.9);
    REQUIRE(weighted[1].first > 0.9);
    const double got_center = 0.5 * (weighted[0].second + weighted[1].second);
    const double got_split = std::abs(weighted[0].second - weighted[1].second);
    return std::pair<double, double>(got_center - center, got_split / split - 1.0);
  };

  const auto [off10, serr10] = doublet_errors(10.0);
  const auto [off40, serr40] = doublet_errors(40.0);

  // In the perturbative regime the model is tight.
  CHECK(std::abs(off40) < 0.02);    // MHz, vs ~3.3 MHz of diagonal shift
  CHECK(std::abs(serr40) < 2e-3);

  // The residuals are leakage, not units: center offset ~ 1/r^6, splitting
  // error ~ 1/r^3.
  CHECK(off10 * 1e6 == doctest::Approx(off40 * 4096e6).epsilon(0.05));
  CHECK(serr10 == doctest::Approx(serr40 * 64.0).epsilon(0.15));
}

TEST_CASE("input validation") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 1.0, 2);
  const auto d = dress(rl, grid, 2);
  // Mismatched x between dressed inputs.
  CHECK_THROWS_AS(compute_pair_coefficients(d.first[0].up, d.first[1].down, d.second[1].up,
                                            d.second[1].down, rl),
                  std::invalid_argument);
  // Down level passed where an up (m=0) level is required.
  CHECK_THROWS_AS(compute_pair_coefficients(d.first[1].down, d.first[1].down, d.second[1].up,
                                            d.second[1].down, rl),
                  std::invalid_argument);
  CHECK(EnantiomerPair::make(PairConfiguration::RL).consistent());
  CHECK(EnantiomerPair::make(PairConfiguration::LL).consistent());
}
