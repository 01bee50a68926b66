#include "fsp/test_functions.hpp"

#include <cmath>
#include <numbers>

#include "fsp/errors.hpp"

namespace fsp {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ShapeError("Gauss-Legendre rule needs at least one point");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

double bump_radial_moment(int dim, int p) {
  return 0.5 * std::beta(0.5 * dim, p + 1.0);
}

PolyBump::PolyBump(int dim, double epsilon, int p, std::span<const double> center)
    : dim_(dim), epsilon_(epsilon), p_(p) {
  if (dim < 1 || dim > kMaxDim) throw ShapeError("bump dimension must be 1, 2 or 3");
  if (!(epsilon > 0.0)) throw ShapeError("bump radius must be positive");
  if (p < 1) throw ShapeError("bump exponent must be a positive integer");
  if (center.size() < static_cast<std::size_t>(dim)) throw ShapeError("bump center needs dim coordinates");
  for (int s = 0; s < dim; ++s) center_[s] = center[s];
  const double sphere = dim == 1 ? 2.0 : dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi;
  gamma_ = 1.0 / (sphere * std::pow(epsilon, dim) * bump_radial_moment(dim, p));
  // Radial integrands below are polynomials of degree <= 2p + 2.
  gauss_legendre(p + 3, nodes_, weights_);
}

PolyBump PolyBump::with_differentiability(int dim, double epsilon, int differentiability,
                                          std::span<const double> center) {
  if (differentiability < 0) throw ShapeError("differentiability must be nonnegative");
  return PolyBump(dim, epsilon, differentiability + 1, center);
}

double PolyBump::radius(const Point& x) const {
  double r2 = 0.0;
  for (int s = 0; s < dim_; ++s) r2 += (x[s] - center_[s]) * (x[s] - center_[s]);
  return std::sqrt(r2);
}

double PolyBump::operator()(const Point& x) const {
  double r2 = 0.0;
  for (int s = 0; s < dim_; ++s) r2 += (x[s] - center_[s]) * (x[s] - center_[s]);
  const double e2 = epsilon_ * epsilon_;
  if (r2 >= e2) return 0.0;
  return gamma_ * std::pow(1.0 - r2 / e2, p_);
}

double PolyBump::potential(const Point& x) const { return potential_at_radius(radius(x)); }

double PolyBump::potential_at_radius(double r) const {
  const double eps = epsilon_;
  switch (dim_) {
    case 1: {
      if (r >= eps) return 0.5 * r;
      // r/2 + int_r^eps (t - r) B(t) dt
      const double half = 0.5 * (eps - r), mid = 0.5 * (eps + r);
      double sum = 0.0;
      for (std::size_t n = 0; n < nodes_.size(); ++n) {
        const double t = mid + half * nodes_[n];
        sum += weights_[n] * (t - r) * std::pow(1.0 - (t / eps) * (t / eps), p_);
      }
      return 0.5 * r + gamma_ * half * sum;
    }
    case 2: {
      if (r >= eps) return std::log(r) * (0.5 * std::numbers::inv_pi);
      // log(eps)/(2 pi) - (1/(4 pi)) sum_{j=1}^{p+1} (1 - r^2/eps^2)^j / j
      const double w = 1.0 - (r / eps) * (r / eps);
      double term = 1.0, sum = 0.0;
      for (int j = 1; j <= p_ + 1; ++j) {
        term *= w;
        sum += term / j;
      }
      return std::log(eps) * (0.5 * std::numbers::inv_pi) - 0.25 * std::numbers::inv_pi * sum;
    }
    default: {
      if (r >= eps) return -0.25 * std::numbers::inv_pi / r;
      // -(1/r) int_0^r s^2 B(s) ds - int_r^eps s B(s) ds
      const double w = 1.0 - (r / eps) * (r / eps);
      const double outer = gamma_ * eps * eps * std::pow(w, p_ + 1) / (2.0 * (p_ + 1));
      if (r == 0.0) return -outer;
      const double half = 0.5 * r;
      double sum = 0.0;
      for (std::size_t n = 0; n < nodes_.size(); ++n) {
        const double s = half * (1.0 + nodes_[n]);
        sum += weights_[n] * s * s * std::pow(1.0 - (s / eps) * (s / eps), p_);
      }
      const double inner = gamma_ * half * sum;
      return -inner / r - outer;
    }
  }
}

double evaluate_bump(const PolyBump& b, const Point& x) { return b(x); }

double analytic_potential(const PolyBump& b, const Point& x) { return b.potential(x); }

}  // namespace fsp
