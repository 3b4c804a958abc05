#include "susylab/potential/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace susylab::potential {

ScalarField::ScalarField(int dim, EvalFn eval, GradFn grad, HessFn hess, std::string name,
                         std::string growth_note)
    : dim_(dim),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      hess_(std::move(hess)),
      name_(std::move(name)),
      growth_note_(std::move(growth_note)) {
  require(dim_ >= 1, ErrorKind::InvalidArgument, "scalar field dimension must be positive");
  require(static_cast<bool>(eval_), ErrorKind::InvalidArgument, "scalar field needs an evaluator");
}

double ScalarField::eval(const Vec& x) const {
  require(x.size() == dim_, ErrorKind::DimensionMismatch, "point dimension does not match field");
  return eval_(x);
}

Vec ScalarField::grad(const Vec& x) const {
  require(x.size() == dim_, ErrorKind::DimensionMismatch, "point dimension does not match field");
  if (grad_) return grad_(x);
  const double step = 1e-6 * (1.0 + x.norm());
  Vec g(dim_);
  Vec xp = x, xm = x;
  for (int i = 0; i < dim_; ++i) {
    xp[i] = x[i] + step;
    xm[i] = x[i] - step;
    g[i] = (eval_(xp) - eval_(xm)) / (2.0 * step);
    xp[i] = xm[i] = x[i];
  }
  return g;
}

Mat ScalarField::hess(const Vec& x) const {
  require(x.size() == dim_, ErrorKind::DimensionMismatch, "point dimension does not match field");
  if (hess_) return hess_(x);
  Mat H(dim_, dim_);
  if (grad_) {
    const double step = 1e-6 * (1.0 + x.norm());
    Vec xp = x, xm = x;
    for (int j = 0; j < dim_; ++j) {
      xp[j] = x[j] + step;
      xm[j] = x[j] - step;
      H.col(j) = (grad_(xp) - grad_(xm)) / (2.0 * step);
      xp[j] = xm[j] = x[j];
    }
  } else {
    const double step = 1e-4 * (1.0 + x.norm());
    const double f0 = eval_(x);
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j) {
        Vec y = x;
        if (i == j) {
          y[i] = x[i] + step;
          const double fp = eval_(y);
          y[i] = x[i] - step;
          const double fm = eval_(y);
          H(i, i) = (fp - 2.0 * f0 + fm) / (step * step);
        } else {
          auto at = [&](double si, double sj) {
            Vec z = x;
            z[i] += si * step;
            z[j] += sj * step;
            return eval_(z);
          };
          H(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * step * step);
          H(j, i) = H(i, j);
        }
      }
    }
  }
  return 0.5 * (H + H.transpose());
}

ScalarField ScalarField::with_growth_note(std::string note) const {
  ScalarField out = *this;
  out.growth_note_ = std::move(note);
  return out;
}

double derivative_consistency(const ScalarField& f, double lo, double hi, int samples,
                              unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  const int n = f.dimension();
  const double step = 1e-5;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = uni(rng);
    const Vec g = f.grad(x);
    const Mat H = f.hess(x);
    Vec gfd(n);
    Mat Hfd(n, n);
    for (int i = 0; i < n; ++i) {
      Vec xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      gfd[i] = (f.eval(xp) - f.eval(xm)) / (2 * step);
      Hfd.col(i) = (f.grad(xp) - f.grad(xm)) / (2 * step);
    }
    const double gscale = std::max(1.0, g.norm());
    const double hscale = std::max(1.0, H.norm());
    worst = std::max(worst, (g - gfd).norm() / gscale);
    worst = std::max(worst, (H - Hfd).norm() / hscale);
  }
  return worst;
}

double hessian_asymmetry(const ScalarField& f, const Vec& x) {
  const Mat H = f.hess(x);
  return (H - H.transpose()).cwiseAbs().maxCoeff();
}

ScalarField sum(const ScalarField& a, const ScalarField& b) {
  require(a.dimension() == b.dimension(), ErrorKind::DimensionMismatch,
          "cannot add fields of different dimension");
  ScalarField::GradFn g;
  ScalarField::HessFn H;
  if (a.has_analytic_grad() && b.has_analytic_grad())
    g = [a, b](const Vec& x) { return Vec(a.grad(x) + b.grad(x)); };
  if (a.has_analytic_hess() && b.has_analytic_hess())
    H = [a, b](const Vec& x) { return Mat(a.hess(x) + b.hess(x)); };
  return ScalarField(
      a.dimension(), [a, b](const Vec& x) { return a.eval(x) + b.eval(x); }, g, H,
      a.name() + "+" + b.name());
}

ScalarField scale(const ScalarField& a, double c) {
  ScalarField::GradFn g;
  ScalarField::HessFn H;
  if (a.has_analytic_grad()) g = [a, c](const Vec& x) { return Vec(c * a.grad(x)); };
  if (a.has_analytic_hess()) H = [a, c](const Vec& x) { return Mat(c * a.hess(x)); };
  return ScalarField(
      a.dimension(), [a, c](const Vec& x) { return c * a.eval(x); }, g, H, a.name());
}

ScalarField minus_half_square(const ScalarField& f) {
  const int n = f.dimension();
  ScalarField::GradFn g;
  ScalarField::HessFn H;
  if (f.has_analytic_grad()) g = [f](const Vec& x) { return Vec(f.grad(x) - x); };
  if (f.has_analytic_hess())
    H = [f, n](const Vec& x) { return Mat(f.hess(x) - Mat::Identity(n, n)); };
  return ScalarField(
      n, [f](const Vec& x) { return f.eval(x) - 0.5 * x.squaredNorm(); }, g, H,
      f.name() + "-|x|^2/2", f.growth_note());
}

}  // namespace susylab::potential
