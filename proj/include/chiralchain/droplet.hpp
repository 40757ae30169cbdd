#pragma once

// Electrostatic noise estimator for a dipole chain inside a charged droplet:
// nearest-neighbor dipole-dipole stabilization vs the Stark perturbation from
// a single surface charge. SI internally, Kelvin at the boundary.

namespace chiralchain {

struct DropletScenario {
  double mu_debye = 2.5;
  double spacing_nm = 1.7;
  double radius_nm = 500.0;
  double charge_e = 1.0;
};

// V_dd = mu^2 / (4 pi eps0 r^3).
double dipole_dipole_energy_joules(double mu_debye, double spacing_nm);
double dipole_dipole_energy_kelvin(double mu_debye, double spacing_nm);

// |V_charge| = mu * q / (4 pi eps0 R^2).
double surface_charge_perturbation_joules(double mu_debye, double charge_e, double radius_nm);
double surface_charge_perturbation_kelvin(double mu_debye, double charge_e, double radius_nm);

// V_dd / V_charge; +infinity when the droplet carries no charge.
double signal_to_noise(const DropletScenario& s);

struct DropletReport {
  double v_dd_joules = 0.0;
  double v_dd_kelvin = 0.0;
  double v_charge_joules = 0.0;
  double v_charge_kelvin = 0.0;
  double ratio = 0.0;
};

DropletReport droplet_report(const DropletScenario& s);

} // namespace chiralchain
