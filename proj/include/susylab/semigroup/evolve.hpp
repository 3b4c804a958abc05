#pragma once

#include "susylab/disc/discretize.hpp"
#include "susylab/spectral/projection.hpp"

#include <vector>

namespace susylab::semigroup {

struct Trajectory {
  std::vector<double> times;
  /// One column per sampled time.
  Mat states;
  double dt = 0.0;
};

struct EvolveOptions {
  /// Number of leading Crank-Nicolson steps replaced by two implicit Euler
  /// half steps (damps stiff modes of rough data).
  int startup_steps = 0;
};

/// Crank-Nicolson approximation of exp(-tP/h) u0:
///   (I + dt/(2h) P) u_{n+1} = (I - dt/(2h) P) u_n,
/// sampled at the requested times (rounded to the step grid).
Trajectory evolve(const disc::SparseOperator& op, const Vec& u0, double t_end, double dt,
                  const std::vector<double>& sample_times, const EvolveOptions& options = {});

struct EvolutionReport {
  std::vector<double> times;
  std::vector<double> remainder_norms;
  std::vector<double> state_norms;
  double fitted_rate = 0.0;
  double gap = 0.0;
  double ratio = 0.0;
  double dt_used = 0.0;
  int window_points = 0;
  /// r(t) non-increasing for t >= 5 dt up to 1e-12 |u0|.
  bool monotone = true;
};

/// Remainder r(t) = |u(t) - sum_i exp(-t lambda_i/h) Pi_i u0| over the
/// metastable indices, its log-linear decay rate on the window
/// r in [1e-8, 1e-2] |u0|, and the gap Re lambda_next / h.
EvolutionReport equilibration_report(const disc::SparseOperator& op,
                                     const spectral::SpectralResult& spectral, const Vec& u0,
                                     const std::vector<double>& times, double dt,
                                     const std::vector<int>& metastable = {0, 1},
                                     const EvolveOptions& options = {});

/// |Pi exp(-tP/h) u - exp(-t P_Pi / h) Pi u| with P_Pi the restriction to the range of Pi.
double commutation_defect(const disc::SparseOperator& op, const spectral::SpectralResult& spectral,
                          const std::vector<int>& indices, const Vec& u, double t, double dt);

}  // namespace susylab::semigroup
