#pragma once

#include "susylab/common.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace susylab::disc {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int n = 3;
};

/// Tensor grid with row-major lexicographic node order (last axis fastest).
/// Operators act on the interior nodes only; boundary nodes carry the
/// homogeneous Dirichlet data.
class Grid {
 public:
  static constexpr std::int64_t kDefaultNodeCap = 4'000'000;

  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  /// Axis counts chosen so the spacing does not exceed `spacing`.
  static Grid with_spacing(const Vec& lo, const Vec& hi, double spacing);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int k) const { return axes_[k]; }
  const std::vector<Axis>& axes() const { return axes_; }
  double spacing(int k) const { return (axes_[k].hi - axes_[k].lo) / (axes_[k].n - 1); }
  double coord(int k, int i) const { return axes_[k].lo + i * spacing(k); }

  std::int64_t node_count() const;
  std::int64_t interior_count() const;
  /// Product of spacings; the quadrature weight of one node.
  double cell_volume() const;

  /// Multi-index of a node (full grid) from its linear index.
  std::vector<int> unravel(std::int64_t node) const;
  std::int64_t ravel(const std::vector<int>& idx) const;
  /// Multi-index (full grid) of the interior unknown with linear index `i`.
  std::vector<int> interior_unravel(std::int64_t i) const;
  /// Linear interior index, or -1 if the node is on the boundary.
  std::int64_t interior_ravel(const std::vector<int>& idx) const;
  bool is_interior(const std::vector<int>& idx) const;

  Vec point(const std::vector<int>& idx) const;
  Vec interior_point(std::int64_t i) const;

  /// Scatter an interior vector into a full-grid vector with zero boundary.
  Vec to_full(const Vec& interior) const;
  /// Restrict a full-grid vector to the interior nodes.
  Vec to_interior(const Vec& full) const;

  void check_cap(std::int64_t cap = kDefaultNodeCap) const;

 private:
  std::vector<Axis> axes_;
};

}  // namespace susylab::disc
