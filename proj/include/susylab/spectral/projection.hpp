#pragma once

#include "susylab/spectral/eigs.hpp"

#include <vector>

namespace susylab::spectral {

/// Pi = sum_i r_i l_i^H over a selected set of eigenpairs.
struct SpectralProjection {
  int rank = 0;
  std::vector<int> indices;
  CMat right;
  CMat left;
  double operator_norm_estimate = 0.0;

  CVec apply(const CVec& v) const;
  Vec apply_real(const Vec& v) const;
  /// max over samples of |Pi^2 v - Pi v| / |Pi v|.
  double idempotency_residual(int samples = 20, std::uint64_t seed = 7) const;
  /// Exact 2-norm from a QR of the low-rank factors, for cross-checks.
  double exact_norm() const;
};

/// Raises GapTooSmall if a selected eigenvalue is within relative distance
/// 1e-6 of an unselected one.
SpectralProjection projection(const SpectralResult& result, const std::vector<int>& indices);

struct Overlap {
  /// Norm of the orthogonal projection of f onto span{r_i}, in [0, 1].
  double value = 0.0;
  /// Index of the single eigenvector with the largest |<r_i, f>|.
  int argmax = -1;
  double best_single = 0.0;
};

/// Overlap of a unit vector with the span of the selected right eigenvectors.
Overlap quasimode_overlap(const SpectralResult& result, const Vec& f, const std::vector<int>& indices);

}  // namespace susylab::spectral
