#include "susylab/susy/quadratic_model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>

namespace susylab::susy {

CMat hamilton_map(const SusySpec& spec, const Vec& x0) {
  const int n = spec.dim;
  const Mat H = spec.phase.hess(x0);
  const CMat B = spec.matrix.B.cast<Complex>();
  const CMat CH = (spec.matrix.C * H).cast<Complex>();
  const Complex I(0, 1);
  // q(y, xi) = <H B H y, y> + 2i <C H y, xi> + <B xi, xi> = Z^T Q Z
  CMat Q(2 * n, 2 * n);
  Q.topLeftCorner(n, n) = (H * spec.matrix.B * H).cast<Complex>();
  Q.topRightCorner(n, n) = I * CH.transpose();
  Q.bottomLeftCorner(n, n) = I * CH;
  Q.bottomRightCorner(n, n) = B;
  // H_q = (dq/dxi, -dq/dy) = 2 [[Q_xi,y, Q_xi,xi], [-Q_y,y, -Q_y,xi]] Z
  CMat F(2 * n, 2 * n);
  F.topLeftCorner(n, n) = 2.0 * Q.bottomLeftCorner(n, n);
  F.topRightCorner(n, n) = 2.0 * Q.bottomRightCorner(n, n);
  F.bottomLeftCorner(n, n) = -2.0 * Q.topLeftCorner(n, n);
  F.bottomRightCorner(n, n) = -2.0 * Q.topRightCorner(n, n);
  return F;
}

std::vector<Complex> hamilton_eigenvalues(const SusySpec& spec, const Vec& x0) {
  Eigen::ComplexEigenSolver<CMat> es(hamilton_map(spec, x0), false);
  std::vector<Complex> all(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(all.begin(), all.end(), [](Complex a, Complex b) { return a.imag() > b.imag(); });
  all.resize(spec.dim);
  for (const auto& l : all)
    require(l.imag() > 1e-12, ErrorKind::NonMorse, "Hamilton map has eigenvalues on the real axis");
  return all;
}

std::vector<Complex> quadratic_model_levels(const SusySpec& spec, const Vec& x0, int count) {
  require(count >= 1, ErrorKind::InvalidArgument, "count must be positive");
  const auto lam = hamilton_eigenvalues(spec, x0);
  const int n = spec.dim;
  const Complex I(0, 1);
  Complex base = -(spec.matrix.B * spec.phase.hess(x0)).trace();
  std::vector<Complex> rate(n);
  for (int l = 0; l < n; ++l) {
    rate[l] = lam[l] / I;
    base += 0.5 * rate[l];
  }
  std::vector<Complex> levels;
  // enumerate multi-indices by total degree until `count` levels below the
  // next degree's lower bound are certain
  for (int degree = 0;; ++degree) {
    std::vector<int> nu(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == n - 1) {
        nu[pos] = left;
        Complex mu = base;
        for (int l = 0; l < n; ++l) mu += static_cast<double>(nu[l]) * rate[l];
        levels.push_back(mu);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        nu[pos] = k;
        rec(pos + 1, left - k);
      }
    };
    rec(0, degree);
    std::sort(levels.begin(), levels.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    // |mu| >= Re mu >= Re base + degree * min Re(rate)
    double min_re = 1e300;
    for (const auto& r : rate) min_re = std::min(min_re, r.real());
    const double next_bound = base.real() + (degree + 1) * min_re;
    if (static_cast<int>(levels.size()) >= count && std::abs(levels[count - 1]) < next_bound) break;
    if (degree > 200) break;
  }
  levels.resize(count);
  return levels;
}

}  // namespace susylab::susy
