#pragma once

#include "susylab/disc/discretize.hpp"

#include <cstdint>
#include <vector>

namespace susylab::spectral {

struct SpectralResult {
  /// Sorted by modulus.
  std::vector<Complex> eigenvalues;
  /// Unit-norm right eigenvectors (columns).
  CMat right;
  /// Left eigenvectors l_i scaled so that l_i^H r_j = delta_ij.
  CMat left;
  std::vector<double> residuals;
  std::vector<double> left_residuals;
  double h = 0.0;
  /// Every eigenvalue of modulus below this radius is in the list.
  double disc_radius_used = 0.0;
  double shift = 0.0;
  std::int64_t n = 0;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// max_{i != j} |l_i^H r_j|.
  double biorthogonality_defect() const;
};

struct EigsOptions {
  /// Shift-invert pole sigma = shift_factor * h.
  double shift_factor = -0.25;
  /// Extra Ritz pairs beyond k, used for certification.
  int extra = 4;
  std::uint64_t seed = 42;
  bool left = true;
};

/// k eigenvalues of smallest modulus by shift-invert Arnoldi with a sparse
/// LU of P - sigma I; left vectors from the transposed solves of the same
/// factorization.
SpectralResult eigs_near_zero(const disc::SparseOperator& op, int k, double tol = 1e-8,
                              int max_iter = 3000, const EigsOptions& options = {});

/// Full dense eigendecomposition, truncated to the k smallest by modulus.
SpectralResult dense_spectrum(const disc::SparseOperator& op, int k);

struct DiscCount {
  int count = 0;
  double radius = 0.0;
  /// Modulus of the first eigenvalue outside the disc divided by the radius.
  double gap_margin = 0.0;
};

/// Eigenvalues of modulus below `radius`. Raises InsufficientK when the
/// largest computed modulus is below 2 radius.
DiscCount count_in_disc(const SpectralResult& result, double radius);

/// Largest distance between each value in `a` and its nearest partner in
/// `b` (greedy one-to-one matching, both sorted by modulus).
double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace susylab::spectral
