#include "susylab/spectral/projection.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace susylab::spectral {

CVec SpectralProjection::apply(const CVec& v) const { return right * (left.adjoint() * v); }

Vec SpectralProjection::apply_real(const Vec& v) const {
  return apply(v.cast<Complex>()).real();
}

double SpectralProjection::idempotency_residual(int samples, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVec v(right.rows());
    for (auto& x : v) x = Complex(g(rng), g(rng));
    const CVec p = apply(v);
    const CVec pp = apply(p);
    worst = std::max(worst, (pp - p).norm() / std::max(p.norm(), 1e-300));
  }
  return worst;
}

double SpectralProjection::exact_norm() const {
  Eigen::HouseholderQR<CMat> qr_r(right), qr_l(left);
  const CMat Rr = qr_r.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
  const CMat Rl = qr_l.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<CMat> svd(Rr * Rl.adjoint());
  return svd.singularValues()[0];
}

SpectralProjection projection(const SpectralResult& result, const std::vector<int>& indices) {
  require(!indices.empty(), ErrorKind::InvalidArgument, "projection needs indices");
  require(result.left.cols() == result.right.cols(), ErrorKind::InvalidArgument,
          "projection needs left eigenvectors");
  std::vector<bool> chosen(result.size(), false);
  for (int i : indices) {
    require(i >= 0 && i < result.size(), ErrorKind::InvalidArgument, "projection index out of range");
    chosen[i] = true;
  }
  for (int i : indices)
    for (int j = 0; j < result.size(); ++j) {
      if (chosen[j]) continue;
      const Complex a = result.eigenvalues[i], b = result.eigenvalues[j];
      const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
      if (std::abs(a - b) / scale < 1e-6)
        throw Error(ErrorKind::GapTooSmall, "selected eigenvalue is not isolated");
    }
  SpectralProjection p;
  p.indices = indices;
  p.rank = static_cast<int>(indices.size());
  p.right.resize(result.right.rows(), p.rank);
  p.left.resize(result.left.rows(), p.rank);
  for (int c = 0; c < p.rank; ++c) {
    p.right.col(c) = result.right.col(indices[c]);
    p.left.col(c) = result.left.col(indices[c]);
  }
  // |Pi|^2 is the top eigenvalue of Gr^{1/2} Gl Gr^{1/2} with Gram matrices
  // Gr = R^H R, Gl = L^H L
  Eigen::SelfAdjointEigenSolver<CMat> gr(p.right.adjoint() * p.right);
  const CMat root = gr.operatorSqrt();
  Eigen::SelfAdjointEigenSolver<CMat> m(root * (p.left.adjoint() * p.left) * root, Eigen::EigenvaluesOnly);
  const double est = std::sqrt(std::max(0.0, m.eigenvalues().maxCoeff()));
  p.operator_norm_estimate = est;
  return p;
}

Overlap quasimode_overlap(const SpectralResult& result, const Vec& f, const std::vector<int>& indices) {
  require(!indices.empty(), ErrorKind::InvalidArgument, "overlap needs indices");
  require(f.size() == result.right.rows(), ErrorKind::LengthMismatch, "quasimode length mismatch");
  const CVec fc = f.cast<Complex>() / f.norm();
  CMat R(result.right.rows(), static_cast<Eigen::Index>(indices.size()));
  Overlap out;
  for (std::size_t c = 0; c < indices.size(); ++c) {
    R.col(c) = result.right.col(indices[c]);
    const double s = std::abs(R.col(c).dot(fc));
    if (s > out.best_single) {
      out.best_single = s;
      out.argmax = indices[c];
    }
  }
  Eigen::HouseholderQR<CMat> qr(R);
  const CMat Q = qr.householderQ() * CMat::Identity(R.rows(), R.cols());
  out.value = std::min(1.0, (Q.adjoint() * fc).norm());
  return out;
}

}  // namespace susylab::spectral
