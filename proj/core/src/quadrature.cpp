#include "plap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace plap {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

ProfileInterpolant::ProfileInterpolant(const RadialProfile& profile)
    : r_(&profile.r), u_(&profile.u), du_(&profile.du) {
  if (profile.r.size() < 2)
    throw std::invalid_argument("ProfileInterpolant: need >= 2 samples");
}

std::size_t ProfileInterpolant::cell(double r) const {
  const auto& rv = *r_;
  auto it = std::upper_bound(rv.begin(), rv.end(), r);
  std::size_t i = static_cast<std::size_t>(it - rv.begin());
  if (i == 0) return 0;
  if (i >= rv.size()) return rv.size() - 2;
  return i - 1;
}

double ProfileInterpolant::value(double r) const {
  const std::size_t i = cell(r);
  const double h = (*r_)[i + 1] - (*r_)[i];
  const double t = (r - (*r_)[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * (*u_)[i] + (t3 - 2 * t2 + t) * h * (*du_)[i] +
         (-2 * t3 + 3 * t2) * (*u_)[i + 1] + (t3 - t2) * h * (*du_)[i + 1];
}

double ProfileInterpolant::derivative(double r) const {
  const std::size_t i = cell(r);
  const double h = (*r_)[i + 1] - (*r_)[i];
  const double t = (r - (*r_)[i]) / h;
  const double t2 = t * t;
  return (6 * t2 - 6 * t) * ((*u_)[i] - (*u_)[i + 1]) / h +
         (3 * t2 - 4 * t + 1) * (*du_)[i] + (3 * t2 - 2 * t) * (*du_)[i + 1];
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, const GaussRule& rule) {
  if (b <= a) return 0.0;
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double mid = lo + 0.5 * h, half = 0.5 * h;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      acc += rule.weights[j] * f(mid + half * rule.nodes[j]) * half;
  }
  return acc;
}

double integrate_cells(const std::function<double(double)>& f, double a,
                       double b, std::span<const double> breakpoints,
                       const GaussRule& rule) {
  if (b <= a) return 0.0;
  double acc = 0.0;
  auto lo_it = std::lower_bound(breakpoints.begin(), breakpoints.end(), a);
  std::size_t i = lo_it == breakpoints.begin()
                      ? 0
                      : static_cast<std::size_t>(lo_it - breakpoints.begin()) -
                            1;
  for (; i + 1 < breakpoints.size() && breakpoints[i] < b; ++i) {
    const double lo = std::max(a, breakpoints[i]);
    const double hi = std::min(b, breakpoints[i + 1]);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      acc += rule.weights[j] * f(mid + half * rule.nodes[j]) * half;
  }
  return acc;
}

double integrate_boundary_layer(const std::function<double(double)>& f,
                                double r_lo, double R, double delta,
                                int panels, const GaussRule& rule) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("integrate_boundary_layer: delta outside (0,1)");
  if (r_lo >= R) return 0.0;
  const double expo = 1.0 - delta;
  const double t_max = std::pow(R - r_lo, expo);
  const auto in_t = [&](double t) {
    const double rr = R - std::pow(t, 1.0 / expo);
    return f(rr) * std::pow(t, delta / expo) / expo;
  };
  return integrate(in_t, 0.0, t_max, panels, rule);
}

}  // namespace plap
