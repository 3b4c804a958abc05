#pragma once

#include "susylab/disc/grid.hpp"
#include "susylab/potential/critical_points.hpp"

#include <vector>

namespace susylab::potential {

struct SublevelLabels {
  /// One label per full-grid node: component id, or -1 above the level.
  std::vector<int> labels;
  int components = 0;
  /// Per component: smallest field value and the node attaining it.
  std::vector<double> min_value;
  std::vector<std::int64_t> argmin_node;
};

/// Face-adjacent flood fill of {field < level}; components ordered by their
/// minimum value. Raises EmptySublevel if no node lies below the level.
SublevelLabels sublevel_components(const ScalarField& field, double level, const disc::Grid& grid);

/// Normalized quasimode on the interior nodes of `grid`:
/// exp(-(phi - phi(well))/h) times a cutoff that is 1 on the well's component
/// at level phi(saddle) - epsilon0 and 0 outside its component at level
/// phi(saddle). In between the cutoff is a quintic smoothstep of
/// (phi(saddle) - phi)/epsilon0.
Vec quasimode(const ScalarField& field, const CriticalPoint& well, double saddle_value, double h,
              double epsilon0, const disc::Grid& grid);

/// Node of `grid` nearest to x.
std::int64_t nearest_node(const disc::Grid& grid, const Vec& x);

}  // namespace susylab::potential
