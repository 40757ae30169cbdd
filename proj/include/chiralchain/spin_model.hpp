#pragma once

// Conversion of dressed energies and pair coefficients into physical XXZ+DMI
// couplings (Pauli-operator convention), the gauge transform that absorbs the
// DMI into an effective planar exchange, and the two-site 4x4 consistency
// reconstruction. Unit boundary: MHz on the rotor side, GHz here.

#include <complex>

#include <Eigen/Dense>

#include "chiralchain/dipole_pair.hpp"

namespace chiralchain {

struct SpinCouplings {
  double j_xy_ghz = 0.0;
  double d_ghz = 0.0;     // Dzyaloshinskii-Moriya strength
  double j_z_ghz = 0.0;
  double h_ghz = 0.0;     // longitudinal field
  double j_tilde_ghz = 0.0;
  double theta_rad = 0.0; // twist angle atan2(D, J_xy)
  double r_nm = 0.0;
  double x = 0.0;
};

// Omega(r) = d_tot^2 / (4 pi eps0 r^3) / h, in GHz.
double omega_scale_ghz(double d_tot_debye, double r_nm);

// Eq.-of-motion map from the dressed two-molecule problem:
//   J_xy = -(Omega/2) Re(Cd1) / d_tot^2
//   D    = +(Omega/2) Im(Cd1) / d_tot^2
//   J_z  = (Omega/4) [(C2+C3) - (C1+C4)] / d_tot^2
//   h    = [2 (E_up - E_down) + Omega (C1-C4)/d_tot^2] / 4
// Energies enter in MHz and are converted here.
SpinCouplings effective_couplings(double e_up_mhz, double e_down_mhz,
                                  const PairCoefficients& coeffs, double r_nm,
                                  double d_tot_debye, double x = 0.0);

struct GaugeTransform {
  double j_tilde_ghz = 0.0;
  double theta_rad = 0.0;
  // Site-dependent z-rotation angle, phi_i = -i * theta.
  double site_phase(int site) const { return -static_cast<double>(site) * theta_rad; }
};

GaugeTransform gauge_transform(const SpinCouplings& c);

// Dressed-basis two-molecule Hamiltonian on {dn dn, dn up, up dn, up up},
// assembled directly from energies and coefficients, GHz.
Eigen::Matrix4cd dressed_pair_hamiltonian(double e_up_ghz, double e_down_ghz,
                                          const PairCoefficients& coeffs, double r_nm,
                                          double d_tot_debye);

// The same 4x4 rebuilt from the spin parameters plus the identity shift E0
// recovered from the diagonal matching equations. Its spectrum must agree
// with dressed_pair_hamiltonian to 1e-10 relative.
Eigen::Matrix4cd reconstruct_pair_hamiltonian(const SpinCouplings& c, double e_up_ghz,
                                              double e_down_ghz, const PairCoefficients& coeffs,
                                              double r_nm, double d_tot_debye);

} // namespace chiralchain
