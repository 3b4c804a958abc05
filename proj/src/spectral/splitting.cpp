#include "susylab/spectral/splitting.hpp"

#include <cmath>
#include <exception>

namespace susylab::spectral {

disc::Grid GridPolicy::grid_for(double h) const {
  return disc::Grid::with_spacing(lo, hi, spacing_over_h * h);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::InvalidArgument,
          "line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  require(sxx > 0, ErrorKind::InvalidArgument, "line fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

SplittingFit splitting_sweep(const SplittingProblem& problem, const std::vector<double>& h_values) {
  require(h_values.size() >= 4, ErrorKind::InvalidArgument, "splitting sweep needs at least 4 h values");
  require(problem.k > problem.index, ErrorKind::InvalidArgument, "k must exceed the eigenvalue index");
  const int m = static_cast<int>(h_values.size());
  std::vector<SplittingSample> samples(m);
  std::vector<std::exception_ptr> errors(m);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < m; ++i) {
    try {
      const double h = h_values[i];
      const auto op = disc::discretize(problem.spec, problem.policy.grid_for(h), h, problem.disc);
      EigsOptions opt = problem.eigs;
      opt.left = false;
      const auto res = eigs_near_zero(op, problem.k, problem.tol, problem.max_iter, opt);
      SplittingSample s;
      s.h = h;
      s.mu = res.eigenvalues[problem.index];
      s.mu0 = res.eigenvalues[0];
      s.next = res.eigenvalues[problem.index + 1];
      s.residual = res.residuals[problem.index];
      s.unknowns = op.size();
      samples[i] = s;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SplittingFit fit;
  fit.samples = samples;
  fit.barrier = problem.barrier;
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (!(s.mu.real() > 0))
      throw Error(ErrorKind::NonPositiveMu1, "computed splitting eigenvalue is not positive at h=" +
                                                 std::to_string(s.h));
    x.push_back(1.0 / s.h);
    y.push_back(std::log(s.mu.real() / s.h));
    fit.prefactors.push_back(s.mu.real() / s.h * std::exp(2.0 * problem.barrier / s.h));
  }
  const LineFit lf = fit_line(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

}  // namespace susylab::spectral
