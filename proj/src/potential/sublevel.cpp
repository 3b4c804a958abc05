#include "susylab/potential/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace susylab::potential {

SublevelLabels sublevel_components(const ScalarField& field, double level, const disc::Grid& grid) {
  require(grid.dim() == field.dimension(), ErrorKind::DimensionMismatch,
          "grid dimension does not match field");
  const std::int64_t N = grid.node_count();
  std::vector<double> values(N);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) values[i] = field.eval(grid.point(grid.unravel(i)));

  std::vector<int> raw(N, -1);
  int count = 0;
  std::vector<double> mins;
  std::vector<std::int64_t> args;
  std::vector<std::int64_t> stack;
  for (std::int64_t start = 0; start < N; ++start) {
    if (raw[start] != -1 || !(values[start] < level)) continue;
    raw[start] = count;
    double best = values[start];
    std::int64_t best_node = start;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::int64_t node = stack.back();
      stack.pop_back();
      auto idx = grid.unravel(node);
      for (int k = 0; k < grid.dim(); ++k) {
        for (int s : {-1, 1}) {
          idx[k] += s;
          if (idx[k] >= 0 && idx[k] < grid.axis(k).n) {
            const std::int64_t nb = grid.ravel(idx);
            if (raw[nb] == -1 && values[nb] < level) {
              raw[nb] = count;
              if (values[nb] < best) {
                best = values[nb];
                best_node = nb;
              }
              stack.push_back(nb);
            }
          }
          idx[k] -= s;
        }
      }
    }
    mins.push_back(best);
    args.push_back(best_node);
    ++count;
  }
  if (count == 0) throw Error(ErrorKind::EmptySublevel, "no grid node below the level");

  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mins[a] < mins[b]; });
  std::vector<int> rank(count);
  for (int r = 0; r < count; ++r) rank[order[r]] = r;

  SublevelLabels out;
  out.components = count;
  out.labels.resize(N);
  for (std::int64_t i = 0; i < N; ++i) out.labels[i] = raw[i] < 0 ? -1 : rank[raw[i]];
  for (int r = 0; r < count; ++r) {
    out.min_value.push_back(mins[order[r]]);
    out.argmin_node.push_back(args[order[r]]);
  }
  return out;
}

std::int64_t nearest_node(const disc::Grid& grid, const Vec& x) {
  require(x.size() == grid.dim(), ErrorKind::DimensionMismatch, "point dimension mismatch");
  std::vector<int> idx(grid.dim());
  for (int k = 0; k < grid.dim(); ++k) {
    const double t = std::round((x[k] - grid.axis(k).lo) / grid.spacing(k));
    idx[k] = static_cast<int>(std::clamp(t, 0.0, static_cast<double>(grid.axis(k).n - 1)));
  }
  return grid.ravel(idx);
}

Vec quasimode(const ScalarField& field, const CriticalPoint& well, double saddle_value, double h,
              double epsilon0, const disc::Grid& grid) {
  require(well.index == 0, ErrorKind::InvalidArgument, "quasimode needs a local minimum");
  require(h > 0, ErrorKind::InvalidArgument, "h must be positive");
  require(epsilon0 > 0 && epsilon0 < saddle_value - well.value, ErrorKind::InvalidArgument,
          "epsilon0 must lie in (0, barrier)");
  const auto inner = sublevel_components(field, saddle_value - epsilon0, grid);
  const auto outer = sublevel_components(field, saddle_value, grid);
  const std::int64_t seed = nearest_node(grid, well.location);
  const int in_label = inner.labels[seed];
  const int out_label = outer.labels[seed];
  if (in_label < 0 || out_label < 0)
    throw Error(ErrorKind::BadTopology, "well node lies outside its sublevel components");

  const std::int64_t N = grid.node_count();
  Vec full = Vec::Zero(N);
  for (std::int64_t i = 0; i < N; ++i) {
    if (outer.labels[i] != out_label) continue;
    const double phi = field.eval(grid.point(grid.unravel(i)));
    double chi = 1.0;
    if (inner.labels[i] != in_label) {
      const double s = std::clamp((saddle_value - phi) / epsilon0, 0.0, 1.0);
      chi = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
    }
    full[i] = chi * std::exp(-(phi - well.value) / h);
  }
  for (std::int64_t i = 0; i < N; ++i)
    if (inner.labels[i] == in_label && outer.labels[i] != out_label)
      throw Error(ErrorKind::BadTopology, "inner component leaks out of the outer component");
  Vec q = grid.to_interior(full);
  const double nrm = q.norm();
  require(nrm > 0, ErrorKind::Underflow, "quasimode vanished on the interior nodes");
  return q / nrm;
}

}  // namespace susylab::potential
