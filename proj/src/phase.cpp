#include "chiralchain/phase.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chiralchain/parallel.hpp"

namespace chiralchain {

const char* to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::LuttingerLiquid: return "LuttingerLiquid";
    case PhaseLabel::FieldPolarized: return "FieldPolarized";
    case PhaseLabel::IsingFM: return "IsingFM";
    case PhaseLabel::IsingAFM: return "IsingAFM";
  }
  return "??";
}

PairDressing dress_pair(const EnantiomerPair& pair, const std::vector<double>& x_grid,
                        BasisTruncation trunc, int workers) {
  PairDressing d;
  d.pair = pair;
  d.trunc = trunc;
  d.x = x_grid;
  d.first = dressed_states(pair.first, x_grid, trunc, workers);
  d.second = dressed_states(pair.second, x_grid, trunc, workers);
  d.coeffs.resize(x_grid.size());
  parallel_for_index(x_grid.size(), workers, [&](std::size_t i) {
    d.coeffs[i] = compute_pair_coefficients(d.first[i].up, d.first[i].down, d.second[i].up,
                                            d.second[i].down, pair);
  });
  return d;
}

SpinCouplings couplings_at(const PairDressing& d, std::size_t ix, double r_nm) {
  return effective_couplings(d.first[ix].up.energy_mhz, d.first[ix].down.energy_mhz,
                             d.coeffs[ix], r_nm, d.pair.first.d_tot(), d.x[ix]);
}

namespace {

std::vector<double> ramp_to(double x) {
  std::vector<double> grid;
  const int steps = std::max(1, static_cast<int>(std::ceil(x / 0.25)));
  for (int i = 0; i <= steps; ++i) grid.push_back(x * i / steps);
  return grid;
}

} // namespace

PairDressing dress_pair_with_ramp(const EnantiomerPair& pair, const std::vector<double>& x_grid,
                                  BasisTruncation trunc, int workers) {
  if (x_grid.empty()) throw std::invalid_argument("dress_pair_with_ramp: empty grid");
  std::vector<double> full;
  const auto ramp = ramp_to(x_grid.front());
  full.assign(ramp.begin(), ramp.end() - 1); // exclusive of the first user point
  full.insert(full.end(), x_grid.begin(), x_grid.end());
  const std::size_t skip = full.size() - x_grid.size();

  const auto d = dress_pair(pair, full, trunc, workers);
  PairDressing out;
  out.pair = d.pair;
  out.trunc = d.trunc;
  out.x.assign(d.x.begin() + static_cast<std::ptrdiff_t>(skip), d.x.end());
  out.first.assign(d.first.begin() + static_cast<std::ptrdiff_t>(skip), d.first.end());
  out.second.assign(d.second.begin() + static_cast<std::ptrdiff_t>(skip), d.second.end());
  out.coeffs.assign(d.coeffs.begin() + static_cast<std::ptrdiff_t>(skip), d.coeffs.end());
  return out;
}

double anisotropy_ratio(double x, const EnantiomerPair& pair, BasisTruncation trunc) {
  if (x <= 0.0)
    throw std::domain_error("anisotropy_ratio: undefined at x = 0 (both couplings vanish)");
  const auto d = dress_pair(pair, ramp_to(x), trunc);
  const auto c = couplings_at(d, d.x.size() - 1, 1.0);
  return c.j_z_ghz / c.j_tilde_ghz;
}

double field_ratio(double x, double r_nm, const EnantiomerPair& pair, BasisTruncation trunc) {
  if (x <= 0.0) throw std::domain_error("field_ratio: requires x > 0");
  const auto d = dress_pair(pair, ramp_to(x), trunc);
  const auto c = couplings_at(d, d.x.size() - 1, r_nm);
  if (c.j_tilde_ghz == 0.0)
    return c.h_ghz >= 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
  return c.h_ghz / c.j_tilde_ghz;
}

PhaseLabel classify(double jz_ratio, double h_ratio) {
  if (jz_ratio > 1.0) return PhaseLabel::IsingAFM;
  if (jz_ratio < -1.0) return PhaseLabel::IsingFM;
  if (std::abs(jz_ratio) < 1.0 && std::abs(h_ratio) < 1.0) return PhaseLabel::LuttingerLiquid;
  return PhaseLabel::FieldPolarized;
}

PhaseLabel classify_saturation(double jz_ratio, double h_ratio) {
  if (jz_ratio > 1.0) return PhaseLabel::IsingAFM;
  if (jz_ratio < -1.0) return PhaseLabel::IsingFM;
  // One-magnon instability of the polarized state at h_sat = 2 (J_tilde+J_z),
  // expressed in units of J_tilde.
  const double h_sat = 2.0 * (1.0 + jz_ratio);
  if (h_sat > 0.0 && std::abs(h_ratio) < h_sat) return PhaseLabel::LuttingerLiquid;
  return PhaseLabel::FieldPolarized;
}

std::vector<PhasePoint> phase_grid(const std::vector<double>& x_grid,
                                   const std::vector<double>& r_grid,
                                   const EnantiomerPair& pair, BasisTruncation trunc,
                                   int workers) {
  if (x_grid.size() < 2 || r_grid.size() < 2)
    throw std::invalid_argument("phase_grid: need at least 2 points per axis");
  for (double x : x_grid)
    if (x <= 0.0) throw std::invalid_argument("phase_grid: x grid must be strictly positive");

  const auto d = dress_pair_with_ramp(pair, x_grid, trunc, workers);

  std::vector<PhasePoint> out(x_grid.size() * r_grid.size());
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
    for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
      const auto c = couplings_at(d, ix, r_grid[ir]);
      PhasePoint p;
      p.x = x_grid[ix];
      p.r_nm = r_grid[ir];
      if (c.j_tilde_ghz == 0.0) {
        p.jz_ratio = 0.0;
        p.h_ratio = c.h_ghz >= 0.0 ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
      } else {
        p.jz_ratio = c.j_z_ghz / c.j_tilde_ghz;
        p.h_ratio = c.h_ghz / c.j_tilde_ghz;
      }
      p.label = classify(p.jz_ratio, p.h_ratio);
      out[ir * x_grid.size() + ix] = p;
    }
  }
  return out;
}

std::vector<BoundaryPoint> boundary_points(const std::vector<PhasePoint>& grid) {
  std::vector<BoundaryPoint> out;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const auto& a = grid[i - 1];
    const auto& b = grid[i];
    if (a.r_nm != b.r_nm) continue; // row boundary
    const double fa = std::abs(a.h_ratio) - 1.0;
    const double fb = std::abs(b.h_ratio) - 1.0;
    if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
    if (fa == 0.0) out.push_back({a.x, a.r_nm});
    if (fa * fb < 0.0) {
      const double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.r_nm});
    }
  }
  return out;
}

std::vector<double> h_zero_crossings(const PairDressing& d, double r_nm, double x_tol) {
  const double d_tot = d.pair.first.d_tot();
  const auto h_of = [&](std::size_t ix) {
    return effective_couplings(d.first[ix].up.energy_mhz, d.first[ix].down.energy_mhz,
                               d.coeffs[ix], r_nm, d_tot, d.x[ix])
        .h_ghz;
  };
  // Tracked off-grid evaluation anchored at the left bracket.
  const auto h_between = [&](std::size_t left, double x) {
    const auto p1 = dressed_point(d.pair.first, x, d.trunc, d.first[left]);
    const auto p2 = dressed_point(d.pair.second, x, d.trunc, d.second[left]);
    const auto c = compute_pair_coefficients(p1.up, p1.down, p2.up, p2.down, d.pair);
    return effective_couplings(p1.up.energy_mhz, p1.down.energy_mhz, c, r_nm, d_tot, x).h_ghz;
  };

  std::vector<double> out;
  for (std::size_t i = 1; i < d.x.size(); ++i) {
    if (d.x[i - 1] <= 0.0) continue; // skip the ramp origin
    double fa = h_of(i - 1);
    double fb = h_of(i);
    if (fa == 0.0) {
      out.push_back(d.x[i - 1]);
      continue;
    }
    if (fa * fb >= 0.0) continue;
    double xa = d.x[i - 1], xb = d.x[i];
    while (xb - xa > x_tol) {
      const double xm = 0.5 * (xa + xb);
      const double fm = h_between(i - 1, xm);
      if (fm == 0.0) {
        xa = xb = xm;
        break;
      }
      if (fa * fm < 0.0) {
        xb = xm;
        fb = fm;
      } else {
        xa = xm;
        fa = fm;
      }
    }
    out.push_back(0.5 * (xa + xb));
  }
  return out;
}

} // namespace chiralchain
