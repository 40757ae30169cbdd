#include "chiralchain/droplet.hpp"

#include <limits>
#include <stdexcept>

#include "chiralchain/constants.hpp"

namespace chiralchain {

namespace c = constants;

double dipole_dipole_energy_joules(double mu_debye, double spacing_nm) {
  if (spacing_nm <= 0.0)
    throw std::invalid_argument("dipole_dipole_energy: spacing must be positive");
  const double mu = mu_debye * c::debye_C_m;
  const double r = spacing_nm * c::nm_m;
  return mu * mu / (c::four_pi_eps0 * r * r * r);
}

double dipole_dipole_energy_kelvin(double mu_debye, double spacing_nm) {
  return dipole_dipole_energy_joules(mu_debye, spacing_nm) / c::boltzmann_J_per_K;
}

double surface_charge_perturbation_joules(double mu_debye, double charge_e, double radius_nm) {
  if (radius_nm <= 0.0)
    throw std::invalid_argument("surface_charge_perturbation: radius must be positive");
  const double mu = mu_debye * c::debye_C_m;
  const double q = charge_e * c::elementary_charge_C;
  const double R = radius_nm * c::nm_m;
  const double field = q / (c::four_pi_eps0 * R * R);
  return mu * field;
}

double surface_charge_perturbation_kelvin(double mu_debye, double charge_e, double radius_nm) {
  return surface_charge_perturbation_joules(mu_debye, charge_e, radius_nm) /
         c::boltzmann_J_per_K;
}

double signal_to_noise(const DropletScenario& s) {
  const double noise = surface_charge_perturbation_kelvin(s.mu_debye, s.charge_e, s.radius_nm);
  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return dipole_dipole_energy_kelvin(s.mu_debye, s.spacing_nm) / noise;
}

DropletReport droplet_report(const DropletScenario& s) {
  DropletReport r;
  r.v_dd_joules = dipole_dipole_energy_joules(s.mu_debye, s.spacing_nm);
  r.v_dd_kelvin = r.v_dd_joules / c::boltzmann_J_per_K;
  r.v_charge_joules = surface_charge_perturbation_joules(s.mu_debye, s.charge_e, s.radius_nm);
  r.v_charge_kelvin = r.v_charge_joules / c::boltzmann_J_per_K;
  r.ratio = signal_to_noise(s);
  return r;
}

} // namespace chiralchain
