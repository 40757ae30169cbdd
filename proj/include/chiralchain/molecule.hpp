#pragma once

#include <array>
#include <complex>

namespace chiralchain {

enum class Handedness { L, R };

// Rigid-rotor constants and body-frame dipole components of one molecule.
// Prolate convention throughout: the body z axis is the a axis,
// (x, y, z) = (b, c, a). The two enantiomers differ only in the sign of d_c.
struct MoleculeSpec {
  double A_mhz = 0.0;
  double B_mhz = 0.0;
  double C_mhz = 0.0;
  double d_a = 0.0; // Debye
  double d_b = 0.0;
  double d_c = 0.0;
  Handedness handedness = Handedness::L;

  // 1,2-propanediol constants from microwave spectroscopy.
  static MoleculeSpec propanediol(Handedness h) {
    MoleculeSpec s;
    s.A_mhz = 8572.05;
    s.B_mhz = 3640.11;
    s.C_mhz = 2790.97;
    s.d_a = 1.201;
    s.d_b = 1.916;
    s.d_c = (h == Handedness::L) ? 0.365 : -0.365;
    s.handedness = h;
    return s;
  }

  double d_tot() const {
    return std::sqrt(d_a * d_a + d_b * d_b + d_c * d_c);
  }

  bool valid() const {
    if (!(A_mhz > B_mhz && B_mhz > C_mhz)) return false;
    if (d_c > 0.0 && handedness != Handedness::L) return false;
    if (d_c < 0.0 && handedness != Handedness::R) return false;
    return true;
  }

  MoleculeSpec mirror() const {
    MoleculeSpec s = *this;
    s.d_c = -d_c;
    s.handedness = (handedness == Handedness::L) ? Handedness::R : Handedness::L;
    return s;
  }
};

// Spherical components of the body-frame dipole, indexed r+1 for r = -1,0,+1:
// d_0 = d_a, d_{+-1} = -+ (d_b +- i d_c)/sqrt(2).
inline std::array<std::complex<double>, 3> spherical_dipole_components(const MoleculeSpec& mol) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<std::complex<double>, 3> d{};
  d[0] = std::complex<double>(mol.d_b, -mol.d_c) * inv_sqrt2;  // d_{-1}
  d[1] = std::complex<double>(mol.d_a, 0.0);                   // d_0
  d[2] = std::complex<double>(-mol.d_b, -mol.d_c) * inv_sqrt2; // d_{+1}
  return d;
}

} // namespace chiralchain
