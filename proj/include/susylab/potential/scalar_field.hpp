#pragma once

#include "susylab/common.hpp"

#include <functional>
#include <memory>
#include <string>

namespace susylab::potential {

/// A smooth real function on R^dim with gradient and Hessian.
///
/// Missing derivatives are replaced by central differences: the gradient
/// uses step 1e-6(1+|x|); the Hessian differentiates the gradient with the
/// same step when an analytic gradient exists, otherwise it differences the
/// values with step 1e-4(1+|x|).
class ScalarField {
 public:
  using EvalFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;
  using HessFn = std::function<Mat(const Vec&)>;

  ScalarField() = default;
  ScalarField(int dim, EvalFn eval, GradFn grad = {}, HessFn hess = {},
              std::string name = {}, std::string growth_note = {});

  int dimension() const { return dim_; }
  double eval(const Vec& x) const;
  Vec grad(const Vec& x) const;
  Mat hess(const Vec& x) const;

  double operator()(const Vec& x) const { return eval(x); }

  bool has_analytic_grad() const { return static_cast<bool>(grad_); }
  bool has_analytic_hess() const { return static_cast<bool>(hess_); }
  bool valid() const { return static_cast<bool>(eval_); }

  const std::string& name() const { return name_; }
  const std::string& growth_note() const { return growth_note_; }
  ScalarField with_growth_note(std::string note) const;

 private:
  int dim_ = 0;
  EvalFn eval_;
  GradFn grad_;
  HessFn hess_;
  std::string name_;
  std::string growth_note_;
};

/// Maximum relative discrepancy between the supplied derivatives and
/// difference quotients of eval (step 1e-5) at `samples` random points of
/// the box [lo, hi]^dim.
double derivative_consistency(const ScalarField& f, double lo, double hi, int samples,
                              unsigned long long seed = 42);

/// Largest |H - H^T| entry at x.
double hessian_asymmetry(const ScalarField& f, const Vec& x);

ScalarField sum(const ScalarField& a, const ScalarField& b);
ScalarField scale(const ScalarField& a, double c);

/// f(x) - |x|^2/2.
ScalarField minus_half_square(const ScalarField& f);

}  // namespace susylab::potential
