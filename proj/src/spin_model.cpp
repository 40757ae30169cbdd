#include "chiralchain/spin_model.hpp"

#include <cmath>
#include <stdexcept>

#include "chiralchain/constants.hpp"

namespace chiralchain {

double omega_scale_ghz(double d_tot_debye, double r_nm) {
  if (r_nm <= 0.0) throw std::invalid_argument("omega_scale_ghz: r must be positive");
  const double joules =
      constants::dipole_pair_J_per_debye2_nm3 * d_tot_debye * d_tot_debye / (r_nm * r_nm * r_nm);
  return joules / constants::planck_J_s * 1e-9;
}

SpinCouplings effective_couplings(double e_up_mhz, double e_down_mhz,
                                  const PairCoefficients& coeffs, double r_nm,
                                  double d_tot_debye, double x) {
  const double omega = omega_scale_ghz(d_tot_debye, r_nm);
  const double d2 = d_tot_debye * d_tot_debye;

  SpinCouplings c;
  c.j_xy_ghz = -0.5 * omega * coeffs.Cd1.real() / d2;
  c.d_ghz = +0.5 * omega * coeffs.Cd1.imag() / d2;
  c.j_z_ghz = 0.25 * omega * ((coeffs.C2 + coeffs.C3) - (coeffs.C1 + coeffs.C4)) / d2;
  c.h_ghz = 0.25 * (2.0 * (e_up_mhz - e_down_mhz) * constants::mhz_to_ghz +
                    omega * (coeffs.C1 - coeffs.C4) / d2);
  c.j_tilde_ghz = std::hypot(c.j_xy_ghz, c.d_ghz);
  c.theta_rad = std::atan2(c.d_ghz, c.j_xy_ghz);
  c.r_nm = r_nm;
  c.x = x;
  return c;
}

GaugeTransform gauge_transform(const SpinCouplings& c) {
  return {c.j_tilde_ghz, c.theta_rad};
}

Eigen::Matrix4cd dressed_pair_hamiltonian(double e_up_ghz, double e_down_ghz,
                                          const PairCoefficients& coeffs, double r_nm,
                                          double d_tot_debye) {
  const double omega = omega_scale_ghz(d_tot_debye, r_nm);
  const double d2 = d_tot_debye * d_tot_debye;
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  H(0, 0) = 2.0 * e_down_ghz - omega * coeffs.C1 / d2;
  H(1, 1) = e_down_ghz + e_up_ghz - omega * coeffs.C2 / d2;
  H(2, 2) = e_up_ghz + e_down_ghz - omega * coeffs.C3 / d2;
  H(3, 3) = 2.0 * e_up_ghz - omega * coeffs.C4 / d2;
  H(1, 2) = -omega * coeffs.Cd1 / d2;
  H(2, 1) = -omega * coeffs.Cd2 / d2;
  return H;
}

Eigen::Matrix4cd reconstruct_pair_hamiltonian(const SpinCouplings& c, double e_up_ghz,
                                              double e_down_ghz, const PairCoefficients& coeffs,
                                              double r_nm, double d_tot_debye) {
  const double omega = omega_scale_ghz(d_tot_debye, r_nm);
  const double d2 = d_tot_debye * d_tot_debye;
  // Identity shift from summing the four diagonal matching equations.
  const double e0 = (e_up_ghz + e_down_ghz) -
                    0.25 * omega * (coeffs.C1 + coeffs.C2 + coeffs.C3 + coeffs.C4) / d2;

  using cplx = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz, id;
  sx << cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0);
  sy << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
  sz << cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0);
  id.setIdentity();

  // Basis order {dn dn, dn up, up dn, up up}: spin-down is the 2x2 index 1,
  // so kron(a, b) with site 1 as the slow index keeps that layout when the
  // single-site basis is {dn, up} = {index 1, index 0} reversed. Use explicit
  // {dn, up} ordering instead: relabel Pauli matrices to that basis.
  const auto flip = [](const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd f;
    f(0, 0) = m(1, 1);
    f(0, 1) = m(1, 0);
    f(1, 0) = m(0, 1);
    f(1, 1) = m(0, 0);
    return f;
  };
  const Eigen::Matrix2cd fx = flip(sx), fy = flip(sy), fz = flip(sz);

  const auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };

  Eigen::Matrix4cd H = c.j_xy_ghz * (kron(fx, fx) + kron(fy, fy)) -
                       c.d_ghz * (kron(fx, fy) - kron(fy, fx)) +
                       c.j_z_ghz * kron(fz, fz) +
                       c.h_ghz * (kron(fz, id) + kron(id, fz));
  H += e0 * Eigen::Matrix4cd::Identity();
  return H;
}

} // namespace chiralchain
