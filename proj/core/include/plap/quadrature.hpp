#pragma once

#include <functional>
#include <span>
#include <vector>

#include "plap/radial_ode.hpp"

namespace plap {

/// Nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes, weights;
};

/// Computed by Newton iteration on the Legendre recurrence; accurate to
/// machine precision for the small orders used here.
GaussRule gauss_legendre(int n);

/// Piecewise cubic Hermite interpolation of a profile from its (u, du)
/// samples. Grid spacing is bounded by the uniform recording grid, so the
/// interpolation error sits far below the residual thresholds it feeds.
class ProfileInterpolant {
 public:
  explicit ProfileInterpolant(const RadialProfile& profile);

  double value(double r) const;
  double derivative(double r) const;
  double r_min() const { return r_->front(); }
  double r_max() const { return r_->back(); }
  std::span<const double> breakpoints() const { return *r_; }

 private:
  std::size_t cell(double r) const;
  const std::vector<double>* r_;
  const std::vector<double>* u_;
  const std::vector<double>* du_;
};

/// Composite Gauss quadrature of f over [a, b] split into `panels` equal
/// panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, const GaussRule& rule);

/// Composite Gauss quadrature over [a, b] using the cells induced by the
/// sorted breakpoint list (clipped to [a, b]). Nodes never touch cell
/// endpoints, so integrable endpoint singularities are tolerated.
double integrate_cells(const std::function<double(double)>& f, double a,
                       double b, std::span<const double> breakpoints,
                       const GaussRule& rule);

/// Integral of f over the boundary layer [r_lo, R] under the substitution
/// t = (R - r)^{1-delta}, which absorbs an (R - r)^{-delta} endpoint
/// singularity into a bounded integrand.
double integrate_boundary_layer(const std::function<double(double)>& f,
                                double r_lo, double R, double delta,
                                int panels, const GaussRule& rule);

}  // namespace plap
