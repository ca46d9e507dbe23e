#ifndef PWD_QUADRATURE_HPP
#define PWD_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "pwd/error.hpp"

namespace pwd {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on P_n.
inline QuadratureRule gauss_legendre(std::size_t n) {
  require(n >= 1, "Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const auto un = static_cast<unsigned>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double p = std::legendre(un, x);
      const double p1 = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = static_cast<double>(n) * (x * p - p1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(un, x);
      const double p1 = n > 1 ? std::legendre(un - 1, x) : 1.0;
      dp = static_cast<double>(n) * (x * p - p1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Composite Gauss-Legendre rule on [a, b] with equal panels.
inline QuadratureRule composite_gauss_legendre(double a, double b, std::size_t panels,
                                               std::size_t order) {
  require(panels >= 1 && b > a, "composite rule needs b > a and panels >= 1");
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    for (std::size_t i = 0; i < order; ++i) {
      rule.nodes.push_back(lo + 0.5 * width * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

/// Trapezoid weights for n equispaced nodes on [a, b].
inline QuadratureRule trapezoid(double a, double b, std::size_t n) {
  require(n >= 2 && b > a, "trapezoid rule needs n >= 2 and b > a");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, (b - a) / static_cast<double>(n - 1));
  for (std::size_t i = 0; i < n; ++i)
    rule.nodes[i] = i + 1 == n ? b
                               : a + (b - a) * (static_cast<double>(i) /
                                                static_cast<double>(n - 1));
  rule.weights.front() *= 0.5;
  rule.weights.back() *= 0.5;
  return rule;
}

}  // namespace pwd

#endif  // PWD_QUADRATURE_HPP
