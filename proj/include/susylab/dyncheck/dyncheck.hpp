#pragma once

#include "susylab/potential/critical_points.hpp"
#include "susylab/susy/susy.hpp"

#include <cstdint>
#include <vector>

namespace susylab::dyncheck {

struct PhasePoint {
  Vec x;
  Vec xi;
};

struct CriticalSetOptions {
  double newton_tol = 1e-10;
  double morse_tol = 1e-6;
  int max_iter = 100;
  /// When false, degenerate points are kept (used by negative controls).
  bool strict_morse = true;
};

/// Uniform lattice of seeds in a box.
std::vector<Vec> lattice_seeds(const potential::Box& box, int per_axis);
/// Deterministic uniform random seeds in a box.
std::vector<Vec> random_seeds(const potential::Box& box, int count, std::uint64_t seed = 42);

/// Common zeros of p0 and the transport field: damped Gauss-Newton on the
/// stacked residual [B^(1/2); 2C] phi'(x). Returns (x_j, 0), deduplicated within 1e-3 (1 + |x|) and
/// sorted by phase value.
std::vector<PhasePoint> critical_set(const susy::SusySpec& spec, const potential::Box& box,
                                     const std::vector<Vec>& seeds,
                                     const CriticalSetOptions& options = {});

/// exp(t H_p1)(rho) by classical RK4 with the given step for
///   x' = c(x),  xi' = 2 phi''(x) C xi.
/// Raises StepTooLarge if p1 drifts by more than 1e-8 relative per unit time.
PhasePoint hp1_flow(const susy::SusySpec& spec, const PhasePoint& rho, double t, double step);

/// p~ = p0(x) + <xi>^-2 p2(x, xi).
double p_tilde(const susy::SusySpec& spec, const PhasePoint& rho);

/// (1/T0) int_{-T0/2}^{T0/2} p~(exp(t H_p1) rho) dt by composite Simpson on
/// the RK4 nodes, starting from `intervals` and doubling until two answers
/// agree to 1e-6 relative.
double time_average(const susy::SusySpec& spec, const PhasePoint& rho, double T0, int intervals = 2048);

/// Fraction of `samples` uniform times t in [-T0/2, T0/2] with
/// p0(exp(t nu)(x0)) >= threshold, nu = c(x).d_x. Raises FlowBlowup when
/// |x(t)| exceeds 1e6.
double nu_flow_measure(const susy::SusySpec& spec, const Vec& x0, double T0, double threshold,
                       int samples);

struct HypothesisPlan {
  potential::Box box;
  int seeds = 200;
  bool lattice = false;
  int lattice_per_axis = 0;
  CriticalSetOptions critical;
  double T0 = 1.0;
  std::vector<double> radii{1e-1, 1e-2, 1e-3};
  int directions = 64;
  /// Two-sided bound for <p~>_T0 / dist^2 near the critical set.
  double C = 50.0;
  /// Far sample set: points of box x [-xi_max, xi_max]^n at distance
  /// >= far_exclusion from the critical set.
  int far_samples = 256;
  double xi_max = 5.0;
  double far_exclusion = 0.3;
  double far_floor = 1e-3;
  /// Measure condition: base points at distance >= measure_exclusion from
  /// the projected critical set.
  int measure_points = 64;
  double measure_exclusion = 0.3;
  double measure_threshold = 1e-3;
  double measure_floor = 0.1;
  int measure_time_samples = 1024;
  std::uint64_t seed = 42;
};

struct NearRatio {
  int point = 0;
  double radius = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

struct MeasureFraction {
  Vec x0;
  double fraction = 0.0;
};

struct HypothesisReport {
  std::vector<PhasePoint> critical_set;
  std::vector<int> indices;
  std::vector<NearRatio> near_ratios;
  double far_min = 0.0;
  std::vector<MeasureFraction> measure_fractions;
  double measure_min = 0.0;
  double C = 0.0;
  double far_floor = 0.0;
  double measure_threshold = 0.0;
  double measure_floor = 0.0;
  double T0 = 0.0;
  bool critical_ok = false;
  bool near_pass = false;
  bool far_pass = false;
  bool measure_pass = false;
  bool pass = false;
  std::string note;
};

/// Runs the three sampled checks; always returns a report.
HypothesisReport verify_hypotheses(const susy::SusySpec& spec, const HypothesisPlan& plan);

}  // namespace susylab::dyncheck
