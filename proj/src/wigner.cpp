#include "chiralchain/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace chiralchain {

namespace {

using int128 = __int128;

long double factorial_ld(int n) {
  static const auto table = [] {
    std::array<long double, 71> t{};
    t[0] = 1.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size()))
    throw std::invalid_argument("factorial argument out of supported range");
  return table[static_cast<std::size_t>(n)];
}

int128 checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out))
    throw std::invalid_argument("angular momenta too large for exact 3-j evaluation");
  return out;
}

// Falling product n! / m! for n >= m >= 0, as an exact integer.
int128 factorial_ratio(int n, int m) {
  int128 p = 1;
  for (int v = m + 1; v <= n; ++v) p = checked_mul(p, v);
  return p;
}

// Exact alternating sum
//   S = sum_t (-1)^t / [ t! (a2+t)! (a3+t)! (b1-t)! (b2-t)! (b3-t)! ]
// returned as (integer numerator, long double denominator D) with
// S = numerator / D and D = tmax!(a2+tmax)!(a3+tmax)!(b1-tmin)!(b2-tmin)!(b3-tmin)!.
// The three "a" slots grow with t and the three "b" slots shrink, so every
// term's ratio D / T_t is an exact integer.
struct RacahSum {
  long double numerator;
  long double denominator;
  bool empty;
};

RacahSum racah_sum(int a2, int a3, int b1, int b2, int b3) {
  const int tmin = std::max({0, -a2, -a3});
  const int tmax = std::min({b1, b2, b3});
  if (tmax < tmin) return {0.0L, 1.0L, true};

  int128 sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    int128 term = factorial_ratio(tmax, t);
    term = checked_mul(term, factorial_ratio(a2 + tmax, a2 + t));
    term = checked_mul(term, factorial_ratio(a3 + tmax, a3 + t));
    term = checked_mul(term, factorial_ratio(b1 - tmin, b1 - t));
    term = checked_mul(term, factorial_ratio(b2 - tmin, b2 - t));
    term = checked_mul(term, factorial_ratio(b3 - tmin, b3 - t));
    sum += (t % 2 == 0) ? term : -term;
  }

  const long double denom = factorial_ld(tmax) * factorial_ld(a2 + tmax) *
                            factorial_ld(a3 + tmax) * factorial_ld(b1 - tmin) *
                            factorial_ld(b2 - tmin) * factorial_ld(b3 - tmin);
  return {static_cast<long double>(sum), denom, false};
}

bool triangle_ok(int j1, int j2, int j3) {
  return j3 >= std::abs(j1 - j2) && j3 <= j1 + j2;
}

long double triangle_coefficient(int j1, int j2, int j3) {
  return factorial_ld(j1 + j2 - j3) * factorial_ld(j1 - j2 + j3) *
         factorial_ld(-j1 + j2 + j3) / factorial_ld(j1 + j2 + j3 + 1);
}

} // namespace

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0)
    throw std::invalid_argument("wigner3j: negative angular momentum");
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!triangle_ok(j1, j2, j3)) return 0.0;

  // Racah form: slots a2 = j3-j2+m1, a3 = j3-j1-m2, b1 = j1+j2-j3,
  // b2 = j1-m1, b3 = j2+m2.
  const auto s = racah_sum(j3 - j2 + m1, j3 - j1 - m2, j1 + j2 - j3, j1 - m1, j2 + m2);
  if (s.empty || s.numerator == 0.0L) return 0.0;

  long double pref = triangle_coefficient(j1, j2, j3);
  pref *= factorial_ld(j1 + m1) * factorial_ld(j1 - m1) * factorial_ld(j2 + m2) *
          factorial_ld(j2 - m2) * factorial_ld(j3 + m3) * factorial_ld(j3 - m3);

  long double value = sqrtl(pref) * s.numerator / s.denominator;
  if ((j1 - j2 - m3) % 2 != 0) value = -value;
  return static_cast<double>(value);
}

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  if (j1 < 0 || j2 < 0 || J < 0)
    throw std::invalid_argument("clebsch_gordan: negative angular momentum");
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  if (M != m1 + m2) return 0.0;
  if (!triangle_ok(j1, j2, J)) return 0.0;

  // van der Waerden form; same slot structure as the 3-j sum with J, M in
  // place of j3, -m3.
  const auto s = racah_sum(J - j2 + m1, J - j1 - m2, j1 + j2 - J, j1 - m1, j2 + m2);
  if (s.empty || s.numerator == 0.0L) return 0.0;

  long double pref = static_cast<long double>(2 * J + 1) * triangle_coefficient(j1, j2, J);
  pref *= factorial_ld(j1 + m1) * factorial_ld(j1 - m1) * factorial_ld(j2 + m2) *
          factorial_ld(j2 - m2) * factorial_ld(J + M) * factorial_ld(J - M);

  return static_cast<double>(sqrtl(pref) * s.numerator / s.denominator);
}

double dmatrix_element(const AngularLabel& bra, int q, int r, const AngularLabel& ket) {
  if (!bra.valid() || !ket.valid())
    throw std::invalid_argument("dmatrix_element: invalid |j k m> label");
  if (std::abs(q) > 1 || std::abs(r) > 1)
    throw std::invalid_argument("dmatrix_element: rank-1 only (|q|, |r| <= 1)");

  if (bra.m != q + ket.m || bra.k != r + ket.k) return 0.0;
  if (std::abs(bra.j - ket.j) > 1) return 0.0;

  const double sign = ((bra.m + bra.k) % 2 == 0) ? 1.0 : -1.0;
  const double scale =
      std::sqrt(static_cast<double>((2 * bra.j + 1) * (2 * ket.j + 1)));
  return sign * scale * wigner3j(bra.j, 1, ket.j, -bra.m, q, ket.m) *
         wigner3j(bra.j, 1, ket.j, -bra.k, r, ket.k);
}

} // namespace chiralchain
