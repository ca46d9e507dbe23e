#ifndef PWD_DETAIL_HARMONIC_POLY_HPP
#define PWD_DETAIL_HARMONIC_POLY_HPP

#include <cmath>
#include <vector>

#include "pwd/error.hpp"

namespace pwd::detail {

struct Monomial {
  double coefficient;
  int x, y, z;
};

inline double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

inline double double_factorial(int n) {
  double f = 1.0;
  for (int i = n; i > 1; i -= 2) f *= i;
  return f;
}

// (1/2pi) * integral over [0, 2pi) of cos^a(phi) sin^b(phi).
inline double trig_moment(int a, int b) {
  if (a % 2 != 0 || b % 2 != 0) return 0.0;
  return double_factorial(a - 1) * double_factorial(b - 1) /
         double_factorial(a + b);
}

/// Exact expansion of (1/2pi) * integral of (z - i x cos(phi) - i y sin(phi))^n
/// over one period. Odd powers of the imaginary part integrate to zero, so all
/// coefficients are real.
inline std::vector<Monomial> expand_harmonic_polynomial(int degree) {
  require(degree >= 0 && degree <= 6,
          "harmonic polynomial degree must lie in [0, 6]");
  std::vector<Monomial> terms;
  for (int k = 0; k <= degree; k += 2) {
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;  // (-i)^k
    const double outer = binomial(degree, k) * sign;
    for (int j = 0; j <= k; j += 2) {
      const double c = outer * binomial(k, j) * trig_moment(j, k - j);
      if (c != 0.0) terms.push_back({c, j, k - j, degree - k});
    }
  }
  return terms;
}

inline double evaluate_monomials(const std::vector<Monomial>& terms, double x,
                                 double y, double z) {
  double sum = 0.0;
  for (const auto& t : terms)
    sum += t.coefficient * std::pow(x, t.x) * std::pow(y, t.y) *
           std::pow(z, t.z);
  return sum;
}

}  // namespace pwd::detail

#endif  // PWD_DETAIL_HARMONIC_POLY_HPP
