#pragma once

#include "susylab/disc/grid.hpp"
#include "susylab/susy/susy.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <string>

namespace susylab::disc {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, std::int64_t>;

struct SparseOperator {
  SparseMatrix matrix;
  Grid grid;
  double h = 0.0;
  std::string spec_tag;

  std::int64_t size() const { return matrix.rows(); }
};

struct DiscretizeOptions {
  /// Axes whose diffusion coefficient B_kk falls below kappa dx^2/h are
  /// given that coefficient instead.
  double kappa = 1.0;
  std::int64_t node_cap = Grid::kDefaultNodeCap;
};

/// Discretize P on the interior nodes of `grid` with homogeneous Dirichlet
/// truncation.
///
/// Diagonal blocks of B - C use the factorized flux form
///   b_k h^2/dx^2 [ (e^{(phi_i - phi_{i+e})/h} + e^{(phi_i - phi_{i-e})/h}) u_i - u_{i+e} - u_{i-e} ],
/// off-diagonal entries M_jk use M_jk (Z_j)^T Z_k with the conjugated centered
/// difference Z_k u_i = h/(2dx) [e^{(phi_{i+e}-phi_i)/h} u_{i+e} - e^{(phi_{i-e}-phi_i)/h} u_{i-e}].
/// The sampled exp(-phi/h) is annihilated up to boundary terms and the
/// C-part is exactly skew.
SparseOperator discretize(const susy::SusySpec& spec, const Grid& grid, double h,
                          const DiscretizeOptions& options = {});

/// exp(-(phi - min phi)/h) on the interior nodes, unit l2 norm.
Vec discretize_maxwellian(const susy::SusySpec& spec, const Grid& grid, double h);

/// Row-ordered sparse product.
Vec apply(const SparseOperator& op, const Vec& v);

/// One "row col value" line per stored entry, 17 significant digits.
void export_coo(const SparseOperator& op, std::ostream& out);

/// Maximum number of stored entries in a row.
std::int64_t max_row_nonzeros(const SparseOperator& op);

/// Stencil bound 1 + 2 dim + 4 (dim choose 2).
std::int64_t stencil_bound(int dim);

}  // namespace susylab::disc
