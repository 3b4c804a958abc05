#pragma once

#include "susylab/spectral/eigs.hpp"
#include "susylab/susy/susy.hpp"

#include <vector>

namespace susylab::spectral {

/// Box fixed across the sweep, spacing tied to h.
struct GridPolicy {
  Vec lo;
  Vec hi;
  double spacing_over_h = 0.2;

  disc::Grid grid_for(double h) const;
};

struct SplittingProblem {
  susy::SusySpec spec;
  GridPolicy policy;
  /// Barrier height entering the exponent (the smallest one).
  double barrier = 0.0;
  /// Position of the exponentially small eigenvalue in modulus order:
  /// 1 with a zero eigenvalue below it, 0 without.
  int index = 1;
  int k = 4;
  double tol = 1e-8;
  int max_iter = 3000;
  EigsOptions eigs;
  disc::DiscretizeOptions disc;
};

struct SplittingSample {
  double h = 0.0;
  Complex mu = 0.0;
  Complex mu0 = 0.0;
  Complex next = 0.0;
  double residual = 0.0;
  std::int64_t unknowns = 0;
};

struct SplittingFit {
  std::vector<SplittingSample> samples;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// (mu / h) exp(2 S / h).
  std::vector<double> prefactors;
  double barrier = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Solve the eigenproblem at each h (in parallel) and regress ln(mu/h) on 1/h.
/// Needs at least four h values; raises NonPositiveMu1 on a non-positive mu.
SplittingFit splitting_sweep(const SplittingProblem& problem, const std::vector<double>& h_values);

}  // namespace susylab::spectral
