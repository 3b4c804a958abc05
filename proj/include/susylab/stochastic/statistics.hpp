#pragma once

#include "susylab/potential/critical_points.hpp"
#include "susylab/stochastic/sde.hpp"
#include "susylab/susy/susy.hpp"

#include <vector>

namespace susylab::stochastic {

struct InvariantOptions {
  /// At most two coordinates to marginalize onto.
  std::vector<int> axes{0};
  int bins = 50;
  double burn_in = 0.5;
  /// Histogram range per chosen axis; defaults to the sample range.
  Vec lo;
  Vec hi;
  /// Integration range for unobserved coordinates of the position block.
  double quad_half_width = 6.0;
  /// Midpoint sub-samples per bin and axis for the exact bin masses.
  int sub = 6;
};

struct InvariantReport {
  double tv = 0.0;
  long samples = 0;
  int total_bins = 0;
  std::vector<double> empirical;
  std::vector<double> exact;
  Vec lo;
  Vec hi;
};

/// Unnormalized log of the Maxwellian density exp(-2 phi/h) marginalized to
/// `axes`. Supported: any axes of a Witten spec, position and velocity axes
/// of the kinetic and chain specs (the chain position marginal uses the
/// effective potential), all axes of a custom spec.
std::function<double(const Vec&)> maxwellian_marginal_log(const susy::SusySpec& spec,
                                                          const std::vector<int>& axes, double h,
                                                          double quad_half_width = 6.0);

/// Total-variation distance between the post-burn-in histogram and the
/// exact marginal on the same bins. Raises TooFewSamples below 10 samples
/// per bin.
InvariantReport invariant_distance(const TrajectoryEnsemble& ens, const susy::SusySpec& spec, double h,
                                   const InvariantOptions& options = {});

struct TransitionStats {
  double radius = 0.0;
  double forward_mean = 0.0;
  double forward_se = 0.0;
  int forward_count = 0;
  double backward_mean = 0.0;
  double backward_se = 0.0;
  int backward_count = 0;
  /// Pooled over both directions.
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};

/// Mean passage time from the ball around the left well to the ball around
/// the right one (and back), measured on snapshots from the first entry into
/// the departure ball after the last visit to the other one.
TransitionStats transition_statistics(const TrajectoryEnsemble& ens,
                                      const potential::CriticalPointReport& wells, double radius,
                                      int min_transitions = 30);

}  // namespace susylab::stochastic
