#include "susylab/disc/grid.hpp"

#include <cmath>

namespace susylab::disc {

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  require(!axes_.empty(), ErrorKind::InvalidArgument, "grid needs at least one axis");
  for (const auto& a : axes_) {
    require(a.n >= 3, ErrorKind::InvalidArgument, "grid axes need n >= 3");
    require(a.hi > a.lo, ErrorKind::InvalidArgument, "grid axes need max > min");
  }
}

Grid Grid::with_spacing(const Vec& lo, const Vec& hi, double spacing) {
  require(lo.size() == hi.size(), ErrorKind::DimensionMismatch, "box corners differ in size");
  require(spacing > 0, ErrorKind::InvalidArgument, "spacing must be positive");
  std::vector<Axis> axes;
  for (int k = 0; k < lo.size(); ++k) {
    const double cells = std::ceil((hi[k] - lo[k]) / spacing - 1e-9);
    axes.push_back({lo[k], hi[k], std::max(3, static_cast<int>(cells) + 1)});
  }
  return Grid(std::move(axes));
}

std::int64_t Grid::node_count() const {
  std::int64_t n = 1;
  for (const auto& a : axes_) n *= a.n;
  return n;
}

std::int64_t Grid::interior_count() const {
  std::int64_t n = 1;
  for (const auto& a : axes_) n *= a.n - 2;
  return n;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int k = 0; k < dim(); ++k) v *= spacing(k);
  return v;
}

std::vector<int> Grid::unravel(std::int64_t node) const {
  std::vector<int> idx(axes_.size());
  for (int k = dim() - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(node % axes_[k].n);
    node /= axes_[k].n;
  }
  return idx;
}

std::int64_t Grid::ravel(const std::vector<int>& idx) const {
  std::int64_t node = 0;
  for (int k = 0; k < dim(); ++k) node = node * axes_[k].n + idx[k];
  return node;
}

std::vector<int> Grid::interior_unravel(std::int64_t i) const {
  std::vector<int> idx(axes_.size());
  for (int k = dim() - 1; k >= 0; --k) {
    const int m = axes_[k].n - 2;
    idx[k] = static_cast<int>(i % m) + 1;
    i /= m;
  }
  return idx;
}

bool Grid::is_interior(const std::vector<int>& idx) const {
  for (int k = 0; k < dim(); ++k)
    if (idx[k] < 1 || idx[k] > axes_[k].n - 2) return false;
  return true;
}

std::int64_t Grid::interior_ravel(const std::vector<int>& idx) const {
  if (!is_interior(idx)) return -1;
  std::int64_t i = 0;
  for (int k = 0; k < dim(); ++k) i = i * (axes_[k].n - 2) + (idx[k] - 1);
  return i;
}

Vec Grid::point(const std::vector<int>& idx) const {
  Vec x(dim());
  for (int k = 0; k < dim(); ++k) x[k] = coord(k, idx[k]);
  return x;
}

Vec Grid::interior_point(std::int64_t i) const { return point(interior_unravel(i)); }

Vec Grid::to_full(const Vec& interior) const {
  require(interior.size() == interior_count(), ErrorKind::LengthMismatch,
          "interior vector has the wrong length");
  Vec full = Vec::Zero(node_count());
  for (std::int64_t i = 0; i < interior.size(); ++i) full[ravel(interior_unravel(i))] = interior[i];
  return full;
}

Vec Grid::to_interior(const Vec& full) const {
  require(full.size() == node_count(), ErrorKind::LengthMismatch,
          "full-grid vector has the wrong length");
  Vec out(interior_count());
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] = full[ravel(interior_unravel(i))];
  return out;
}

void Grid::check_cap(std::int64_t cap) const {
  if (node_count() > cap)
    throw Error(ErrorKind::MemoryCap, "grid has " + std::to_string(node_count()) +
                                          " nodes, above the cap of " + std::to_string(cap));
}

}  // namespace susylab::disc
