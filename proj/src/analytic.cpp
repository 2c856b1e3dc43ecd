#include "perc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace perc {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

// Power series of 2F1(1/3, 2/3; 4/3; x) for 0 <= x <= 1/2.
double hyp_series(double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 400; ++n) {
    term *= (n + 1.0 / 3.0) * (n + 2.0 / 3.0) / ((n + 4.0 / 3.0) * (n + 1.0)) * x;
    sum += term;
    // Remaining terms are bounded by a geometric tail with ratio x.
    if (term < 1e-17 * (1.0 - x)) break;
  }
  return sum;
}

}  // namespace

Point triangle_vertex(int alpha) {
  switch (((alpha % 3) + 3) % 3) {
    case 0: return {0.5, kSqrt3 / 2};
    case 1: return {0.0, 0.0};
    default: return {1.0, 0.0};
  }
}

double h_triangle(int alpha, Point z) {
  // Barycentric coordinates of z.
  auto bary = [&](int k) {
    const Point b = triangle_vertex(k + 1), c = triangle_vertex(k + 2);
    return ((b.x - z.x) * (c.y - z.y) - (c.x - z.x) * (b.y - z.y)) / (kSqrt3 / 2);
  };
  for (int k = 0; k < 3; ++k)
    if (bary(k) < -1e-12) throw std::domain_error("h_triangle: point outside the triangle");
  return std::clamp(bary(alpha), 0.0, 1.0);
}

double cardy_constant() {
  return std::tgamma(2.0 / 3.0) / (std::tgamma(1.0 / 3.0) * std::tgamma(4.0 / 3.0));
}

double cardy_crossing(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("cardy_crossing: eta outside [0,1]");
  if (eta > 0.5) return 1.0 - cardy_crossing(1.0 - eta);
  if (eta == 0.0) return 0.0;
  return cardy_constant() * std::cbrt(eta) * hyp_series(eta);
}

double rectangle_cross_ratio(double rho) {
  if (!(rho > 0.0)) throw std::domain_error("rectangle_cross_ratio: aspect must be positive");
  if (rho > 1.0) return 1.0 - rectangle_cross_ratio(1.0 / rho);
  // Rectangle [0, 2K] x [0, K'] with 2K/K' = rho, so the nome is exp(-2 pi / rho).
  const double q = std::exp(-2.0 * std::numbers::pi / rho);
  double t2 = 0.0, t3 = 1.0;
  for (int n = 0; n < 60; ++n) {
    const double a = std::pow(q, n * (n + 1.0));
    t2 += a;
    if (n > 0) t3 += 2.0 * std::pow(q, double(n) * n);
    if (a < 1e-20) break;
  }
  t2 *= 2.0 * std::pow(q, 0.25);
  const double k = (t2 * t2) / (t3 * t3);
  const double r = (1.0 - k) / (1.0 + k);
  return r * r;
}

}  // namespace perc
