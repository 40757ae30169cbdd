#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "chiralchain/spin_model.hpp"

using namespace chiralchain;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

} // namespace

TEST_CASE("omega scale fixture and power laws") {
  // 1 Debye at 1 nm: d^2/(4 pi eps0 r^3) / h = 150.92 GHz.
  CHECK(omega_scale_ghz(1.0, 1.0) == doctest::Approx(150.919).epsilon(2e-4));
  CHECK(omega_scale_ghz(1.0, 2.0) == doctest::Approx(omega_scale_ghz(1.0, 1.0) / 8.0).epsilon(1e-14));
  CHECK(omega_scale_ghz(2.0, 1.0) == doctest::Approx(4.0 * omega_scale_ghz(1.0, 1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(omega_scale_ghz(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(omega_scale_ghz(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("effective couplings: chirality structure") {
  const auto grid = linspace(0.0, 2.0, 5);
  const auto ll = EnantiomerPair::make(PairConfiguration::LL);
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto lr = EnantiomerPair::make(PairConfiguration::LR);

  const auto dll1 = dressed_states(ll.first, grid, {5});
  const auto drl1 = dressed_states(rl.first, grid, {5});
  const auto drl2 = dressed_states(rl.second, grid, {5});
  const double dt = ll.first.d_tot();

  for (std::size_t i = 1; i < grid.size(); ++i) {
    // Homochiral: pure symmetric exchange, no DMI.
    const auto cll = compute_pair_coefficients(dll1[i].up, dll1[i].down, dll1[i].up,
                                               dll1[i].down, ll);
    const auto sll = effective_couplings(dll1[i].up.energy_mhz, dll1[i].down.energy_mhz, cll,
                                         1.5, dt, grid[i]);
    CHECK(std::abs(sll.d_ghz) < 1e-10);

    // Heterochiral order flip reverses D, leaves J_xy, J_z, h unchanged.
    const auto crl = compute_pair_coefficients(drl1[i].up, drl1[i].down, drl2[i].up,
                                               drl2[i].down, rl);
    const auto clr = compute_pair_coefficients(drl2[i].up, drl2[i].down, drl1[i].up,
                                               drl1[i].down, lr);
    const auto srl = effective_couplings(drl1[i].up.energy_mhz, drl1[i].down.energy_mhz, crl,
                                         1.5, dt, grid[i]);
    const auto slr = effective_couplings(drl1[i].up.energy_mhz, drl1[i].down.energy_mhz, clr,
                                         1.5, dt, grid[i]);
    CHECK(srl.d_ghz == doctest::Approx(-slr.d_ghz).epsilon(1e-10));
    CHECK(srl.j_xy_ghz == doctest::Approx(slr.j_xy_ghz).epsilon(1e-10));
    CHECK(srl.j_z_ghz == doctest::Approx(slr.j_z_ghz).epsilon(1e-10));
    CHECK(srl.h_ghz == doctest::Approx(slr.h_ghz).epsilon(1e-10));
    CHECK(std::abs(srl.d_ghz) > 0.0);

    // Gauge data: tilde coupling and twist angle.
    CHECK(srl.j_tilde_ghz == doctest::Approx(std::hypot(srl.j_xy_ghz, srl.d_ghz)).epsilon(1e-12));
    CHECK(srl.theta_rad == doctest::Approx(std::atan2(srl.d_ghz, srl.j_xy_ghz)).epsilon(1e-12));
    CHECK(srl.theta_rad == doctest::Approx(-slr.theta_rad).epsilon(1e-10));
  }
}

TEST_CASE("J_z stays negative across the field range") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 20.0, 41);
  const auto d1 = dressed_states(rl.first, grid, {8});
  const auto d2 = dressed_states(rl.second, grid, {8});
  const double dt = rl.first.d_tot();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto c = compute_pair_coefficients(d1[i].up, d1[i].down, d2[i].up, d2[i].down, rl);
    const auto s = effective_couplings(d1[i].up.energy_mhz, d1[i].down.energy_mhz, c, 1.5, dt,
                                       grid[i]);
    CHECK(s.j_z_ghz < 0.0);
  }
}

TEST_CASE("1/r^3 factorization: couplings at 2 nm are exactly 1/8 of 1 nm") {
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 1.0, 3);
  const auto d1 = dressed_states(rl.first, grid, {5});
  const auto d2 = dressed_states(rl.second, grid, {5});
  const double dt = rl.first.d_tot();
  const auto c = compute_pair_coefficients(d1[2].up, d1[2].down, d2[2].up, d2[2].down, rl);
  const auto s1 = effective_couplings(0.0, 0.0, c, 1.0, dt, 1.0);
  const auto s2 = effective_couplings(0.0, 0.0, c, 2.0, dt, 1.0);
  CHECK(s2.j_xy_ghz == doctest::Approx(s1.j_xy_ghz / 8.0).epsilon(1e-14));
  CHECK(s2.d_ghz == doctest::Approx(s1.d_ghz / 8.0).epsilon(1e-14));
  CHECK(s2.j_z_ghz == doctest::Approx(s1.j_z_ghz / 8.0).epsilon(1e-14));
}

TEST_CASE("gauge transform basics") {
  SpinCouplings c;
  c.j_xy_ghz = 2.0;
  c.d_ghz = 0.0;
  c.j_tilde_ghz = std::hypot(c.j_xy_ghz, c.d_ghz);
  c.theta_rad = std::atan2(c.d_ghz, c.j_xy_ghz);
  auto g = gauge_transform(c);
  CHECK(g.theta_rad == 0.0);
  CHECK(g.j_tilde_ghz == doctest::Approx(std::abs(c.j_xy_ghz)));

  c.d_ghz = 2.0;
  c.j_tilde_ghz = std::hypot(c.j_xy_ghz, c.d_ghz);
  c.theta_rad = std::atan2(c.d_ghz, c.j_xy_ghz);
  g = gauge_transform(c);
  CHECK(g.theta_rad == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
  CHECK(g.j_tilde_ghz == doctest::Approx(std::sqrt(2.0) * 2.0).epsilon(1e-14));
  CHECK(g.site_phase(3) == doctest::Approx(-3.0 * M_PI / 4.0).epsilon(1e-14));
}

TEST_CASE("two-site reconstruction: closed form and spectrum equality") {
  // Non-interacting limit: diagonal {2E_dn, E_dn+E_up, E_up+E_dn, 2E_up}.
  PairCoefficients zero;
  const Eigen::Matrix4cd H0 = dressed_pair_hamiltonian(1.3, 4.2, zero, 1.0, 1.0);
  CHECK(H0(0, 0).real() == doctest::Approx(8.4));
  CHECK(H0(1, 1).real() == doctest::Approx(5.5));
  CHECK(H0(2, 2).real() == doctest::Approx(5.5));
  CHECK(H0(3, 3).real() == doctest::Approx(2.6));

  // Physical coefficients from the default pair at a few fields.
  const auto rl = EnantiomerPair::make(PairConfiguration::RL);
  const auto grid = linspace(0.0, 3.0, 4);
  const auto d1 = dressed_states(rl.first, grid, {6});
  const auto d2 = dressed_states(rl.second, grid, {6});
  const double dt = rl.first.d_tot();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto coeffs =
        compute_pair_coefficients(d1[i].up, d1[i].down, d2[i].up, d2[i].down, rl);
    const double eu = d1[i].up.energy_mhz * 1e-3;
    const double ed = d1[i].down.energy_mhz * 1e-3;
    const auto s = effective_couplings(d1[i].up.energy_mhz, d1[i].down.energy_mhz, coeffs, 1.2,
                                       dt, grid[i]);
    const Eigen::Matrix4cd direct = dressed_pair_hamiltonian(eu, ed, coeffs, 1.2, dt);
    const Eigen::Matrix4cd rebuilt = reconstruct_pair_hamiltonian(s, eu, ed, coeffs, 1.2, dt);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ea(direct), eb(rebuilt);
    for (int k = 0; k < 4; ++k) {
      const double denom = std::max(1.0, std::abs(ea.eigenvalues()(k)));
      CHECK(std::abs(ea.eigenvalues()(k) - eb.eigenvalues()(k)) / denom < 1e-10);
    }

    // Closed-form spectrum of the spin form.
    const double e0 = (eu + ed) - 0.25 * omega_scale_ghz(dt, 1.2) *
                                      (coeffs.C1 + coeffs.C2 + coeffs.C3 + coeffs.C4) /
                                      (dt * dt);
    std::vector<double> want{s.j_z_ghz + 2.0 * s.h_ghz + e0, s.j_z_ghz - 2.0 * s.h_ghz + e0,
                             -s.j_z_ghz + 2.0 * s.j_tilde_ghz + e0,
                             -s.j_z_ghz - 2.0 * s.j_tilde_ghz + e0};
    std::sort(want.begin(), want.end());
    for (int k = 0; k < 4; ++k)
      CHECK(eb.eigenvalues()(k) == doctest::Approx(want[static_cast<std::size_t>(k)]).epsilon(1e-10));

    // Spectrum invariant under D -> -D (two-site gauge equivalence).
    SpinCouplings sm = s;
    sm.d_ghz = -sm.d_ghz;
    sm.theta_rad = -sm.theta_rad;
    const Eigen::Matrix4cd mirrored = reconstruct_pair_hamiltonian(sm, eu, ed, coeffs, 1.2, dt);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> em(mirrored);
    for (int k = 0; k < 4; ++k)
      CHECK(em.eigenvalues()(k) == doctest::Approx(eb.eigenvalues()(k)).epsilon(1e-12));
  }
}
