#pragma once

// Phase classification of the molecular chain over (x, r) grids against the
// |h| = J_tilde critical line, with the anisotropy ratio J_z / J_tilde as the
// second axis. Dressed states are computed once per x and shared across all
// r: the separation enters only through Omega(r).

#include <vector>

#include "chiralchain/dipole_pair.hpp"
#include "chiralchain/spin_model.hpp"

namespace chiralchain {

enum class PhaseLabel { LuttingerLiquid, FieldPolarized, IsingFM, IsingAFM };

const char* to_string(PhaseLabel label);

struct PhasePoint {
  double x = 0.0;
  double r_nm = 0.0;
  double jz_ratio = 0.0; // J_z / J_tilde
  double h_ratio = 0.0;  // h / J_tilde
  PhaseLabel label = PhaseLabel::FieldPolarized;
};

// Per-x dressed data for one enantiomer pair, reusable across separations.
struct PairDressing {
  EnantiomerPair pair;
  BasisTruncation trunc;
  std::vector<double> x;
  std::vector<DressedPair> first;
  std::vector<DressedPair> second;
  std::vector<PairCoefficients> coeffs;
};

PairDressing dress_pair(const EnantiomerPair& pair, const std::vector<double>& x_grid,
                        BasisTruncation trunc, int workers = 1);

// Same, but the supplied grid may start anywhere: an internal ramp from zero
// field (step <= 0.25) keeps the adiabatic tracking sound, and only the
// requested points are returned.
PairDressing dress_pair_with_ramp(const EnantiomerPair& pair, const std::vector<double>& x_grid,
                                  BasisTruncation trunc, int workers = 1);

// Couplings at grid index ix and separation r.
SpinCouplings couplings_at(const PairDressing& d, std::size_t ix, double r_nm);

// J_z / J_tilde; r-independent (Omega cancels). Throws std::domain_error at
// x = 0 where the contract declares the ratio undefined.
double anisotropy_ratio(double x, const EnantiomerPair& pair, BasisTruncation trunc);

// h / J_tilde with the full Stark splitting; returns +-infinity when
// J_tilde = 0.
double field_ratio(double x, double r_nm, const EnantiomerPair& pair, BasisTruncation trunc);

// Paper criterion: Luttinger liquid iff |jz_ratio| < 1 and |h_ratio| < 1,
// Ising FM/AFM outside |jz_ratio| <= 1, field-polarized otherwise.
PhaseLabel classify(double jz_ratio, double h_ratio);

// Alternate (non-paper) classifier replacing the |h| = J_tilde boundary with
// the single-magnon saturation field h_sat = 2 (J_tilde + J_z).
PhaseLabel classify_saturation(double jz_ratio, double h_ratio);

// Row-major grid over r (outer) and x (inner).
std::vector<PhasePoint> phase_grid(const std::vector<double>& x_grid,
                                   const std::vector<double>& r_grid,
                                   const EnantiomerPair& pair, BasisTruncation trunc,
                                   int workers = 1);

struct BoundaryPoint {
  double x = 0.0;
  double r_nm = 0.0;
};

// Sign changes of |h_ratio| - 1 along each fixed-r row, linearly
// interpolated in x.
std::vector<BoundaryPoint> boundary_points(const std::vector<PhasePoint>& grid);

// Zero crossings of h(x) at fixed r: grid detection on the dressing table,
// then bisection (tracked off-grid evaluations) to x_tol.
std::vector<double> h_zero_crossings(const PairDressing& d, double r_nm, double x_tol = 1e-3);

} // namespace chiralchain
