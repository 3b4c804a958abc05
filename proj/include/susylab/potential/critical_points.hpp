#pragma once

#include "susylab/potential/scalar_field.hpp"

#include <utility>
#include <vector>

namespace susylab::potential {

struct Box {
  Vec lo;
  Vec hi;
  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x) const;
};

struct CriticalPoint {
  Vec location;
  double value = 0.0;
  int index = 0;
  Vec hess_eigs;
};

struct CriticalPointReport {
  std::vector<CriticalPoint> points;
  /// (position in `points`, barrier height) for each well below the saddle.
  std::vector<std::pair<int, double>> barriers;
  bool is_double_well = false;
  bool is_well_and_sea = false;
  /// Position of the unique index-1 point, -1 when absent or not unique.
  int saddle = -1;
  /// False when the topology is outside the supported cases.
  bool supported = true;
  std::string topology_note;

  std::vector<int> minima() const;
  /// Smallest barrier over the wells, the exponent that dominates splitting.
  double effective_barrier() const;
};

struct CriticalSearchOptions {
  int seeds_per_axis = 20;
  double newton_tol = 1e-10;
  double morse_tol = 1e-6;
  int max_iter = 100;
  /// When false, degenerate points are returned instead of raising NonMorse.
  bool strict_morse = true;
};

/// Damped Newton on the gradient from a uniform seed lattice in `box`.
/// Points are deduplicated within 10 newton_tol and sorted by value.
std::vector<CriticalPoint> find_critical_points(const ScalarField& field, const Box& box,
                                                const CriticalSearchOptions& options = {});

/// Classify a Morse critical set and compute barrier heights. Unsupported
/// topologies (several saddles or more than two minima) produce a report
/// with `supported == false`, empty barriers and both flags false.
CriticalPointReport barrier_report(const std::vector<CriticalPoint>& points);

/// Morse index from an independent dense eigensolve of the Hessian.
int morse_index(const Mat& hessian);

}  // namespace susylab::potential
