#include "susylab/disc/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

namespace susylab::disc {

std::int64_t stencil_bound(int dim) { return 1 + 2 * dim + 2 * dim * (dim - 1); }

SparseOperator discretize(const susy::SusySpec& spec, const Grid& grid, double h,
                          const DiscretizeOptions& options) {
  require(grid.dim() == spec.dim, ErrorKind::DimensionMismatch, "grid and spec dimensions differ");
  require(h > 0, ErrorKind::InvalidArgument, "h must be positive");
  grid.check_cap(options.node_cap);

  const int d = grid.dim();
  const std::int64_t N = grid.interior_count();
  const std::int64_t full = grid.node_count();

  std::vector<double> phi(full);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < full; ++i) phi[i] = spec.phase.eval(grid.point(grid.unravel(i)));

  const Mat M = spec.matrix.B - spec.matrix.C;
  std::vector<double> dx(d), b(d);
  for (int k = 0; k < d; ++k) {
    dx[k] = grid.spacing(k);
    b[k] = std::max(spec.matrix.B(k, k), options.kappa * dx[k] * dx[k] / h);
  }

  std::vector<std::vector<std::pair<std::int64_t, double>>> rows(N);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < N; ++r) {
    std::vector<int> idx = grid.interior_unravel(r);
    const std::int64_t node = grid.ravel(idx);
    const double pi = phi[node];
    std::map<std::int64_t, double> entries;
    double diag = 0.0;
    for (int k = 0; k < d; ++k) {
      const double w = b[k] * h * h / (dx[k] * dx[k]);
      for (int s : {-1, 1}) {
        idx[k] += s;
        diag += w * std::exp((pi - phi[grid.ravel(idx)]) / h);
        const std::int64_t c = grid.interior_ravel(idx);
        if (c >= 0) entries[c] -= w;
        idx[k] -= s;
      }
    }
    entries[r] += diag;
    // sum_{j != k} M_jk sum_m Z_j[m, r] Z_k[m, c]
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        if (j == k || M(j, k) == 0.0) continue;
        for (int s : {-1, 1}) {
          std::vector<int> m = idx;
          m[j] -= s;
          if (!grid.is_interior(m)) continue;
          const double pm = phi[grid.ravel(m)];
          const double zj = s * h / (2 * dx[j]) * std::exp((pi - pm) / h);
          for (int t : {-1, 1}) {
            std::vector<int> cidx = m;
            cidx[k] += t;
            const std::int64_t c = grid.interior_ravel(cidx);
            if (c < 0) continue;
            const double zk = t * h / (2 * dx[k]) * std::exp((phi[grid.ravel(cidx)] - pm) / h);
            entries[c] += M(j, k) * zj * zk;
          }
        }
      }
    }
    rows[r].assign(entries.begin(), entries.end());
  }

  SparseOperator op;
  op.grid = grid;
  op.h = h;
  op.spec_tag = spec.tag;
  op.matrix.resize(N, N);
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> counts(N);
  for (std::int64_t r = 0; r < N; ++r) counts[r] = static_cast<std::int64_t>(rows[r].size());
  op.matrix.reserve(counts);
  for (std::int64_t r = 0; r < N; ++r)
    for (const auto& [c, v] : rows[r]) {
      require(std::isfinite(v), ErrorKind::InvalidArgument, "non-finite operator entry");
      op.matrix.insert(r, c) = v;
    }
  op.matrix.makeCompressed();
  return op;
}

Vec discretize_maxwellian(const susy::SusySpec& spec, const Grid& grid, double h) {
  require(grid.dim() == spec.dim, ErrorKind::DimensionMismatch, "grid and spec dimensions differ");
  const std::int64_t N = grid.interior_count();
  Vec phi(N);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < N; ++i) phi[i] = spec.phase.eval(grid.interior_point(i));
  const double lo = phi.minCoeff();
  Vec g = (-(phi.array() - lo) / h).exp().matrix();
  // the largest sample is exactly 1 after the shift, so underflow means every
  // sample except the minimizer vanished as well as an empty interior
  require(g.maxCoeff() >= 1e-300, ErrorKind::Underflow, "Maxwellian underflows on every node");
  return g / g.norm();
}

Vec apply(const SparseOperator& op, const Vec& v) {
  if (v.size() != op.size())
    throw Error(ErrorKind::LengthMismatch, "vector length does not match operator size");
  Vec out(op.size());
  const auto& A = op.matrix;
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < A.outerSize(); ++r) {
    double acc = 0.0;
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) acc += it.value() * v[it.col()];
    out[r] = acc;
  }
  return out;
}

void export_coo(const SparseOperator& op, std::ostream& out) {
  out << std::setprecision(17);
  for (std::int64_t r = 0; r < op.matrix.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(op.matrix, r); it; ++it)
      out << r << ' ' << it.col() << ' ' << it.value() << '\n';
}

std::int64_t max_row_nonzeros(const SparseOperator& op) {
  std::int64_t best = 0;
  for (std::int64_t r = 0; r < op.matrix.outerSize(); ++r)
    best = std::max<std::int64_t>(best, op.matrix.outerIndexPtr()[r + 1] - op.matrix.outerIndexPtr()[r]);
  return best;
}

}  // namespace susylab::disc
