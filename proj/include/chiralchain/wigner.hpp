#pragma once

// Angular-momentum algebra for integer j: Wigner 3-j symbols, Clebsch-Gordan
// coefficients, and matrix elements of rank-1 Wigner D-matrices between
// |j k m> rotor basis states.
//
// The alternating Racah sums are evaluated with exact integer arithmetic
// (128-bit, overflow-checked) over a common denominator, so no cancellation
// error enters before the final conversion to floating point. Half-integer
// angular momenta are out of scope.

namespace chiralchain {

struct AngularLabel {
  int j = 0;
  int k = 0; // body-frame projection
  int m = 0; // lab-frame projection

  bool valid() const { return j >= 0 && k >= -j && k <= j && m >= -j && m <= j; }
};

// (j1 j2 j3; m1 m2 m3). Returns exactly 0 when m1+m2+m3 != 0 or the triangle
// inequality fails. Throws std::invalid_argument for negative j.
double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3);

// <j1 m1, j2 m2 | J M> with the Condon-Shortley phase convention.
// Returns 0 when M != m1+m2 or the triangle inequality fails.
double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M);

// <j k m| D^{1*}_{q,r} |j' k' m'>. Rank 1 only: |q| <= 1 and |r| <= 1.
// Zero unless m = q + m', k = r + k' and |j - j'| <= 1.
double dmatrix_element(const AngularLabel& bra, int q, int r, const AngularLabel& ket);

} // namespace chiralchain
