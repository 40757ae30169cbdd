#pragma once

#include <stdexcept>
#include <string>

namespace chiralchain {

// Numerical contract broken (non-Hermitian input, mismatched grids, ...).
struct ContractViolation : std::runtime_error {
  explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

// Adiabatic tracking found two candidate eigenvectors with overlaps too close
// to call. Carries both candidates so the caller can inspect the collision.
struct TrackingAmbiguity : std::runtime_error {
  TrackingAmbiguity(const std::string& what, double x, int index_a, int index_b,
                    double overlap_a, double overlap_b)
      : std::runtime_error(what), x(x), index_a(index_a), index_b(index_b),
        overlap_a(overlap_a), overlap_b(overlap_b) {}
  double x;
  int index_a;
  int index_b;
  double overlap_a;
  double overlap_b;
};

// A requested dense problem exceeds the configured size cap.
struct DimensionCapExceeded : std::runtime_error {
  DimensionCapExceeded(const std::string& what, long dim, long cap)
      : std::runtime_error(what), dim(dim), cap(cap) {}
  long dim;
  long cap;
};

} // namespace chiralchain
