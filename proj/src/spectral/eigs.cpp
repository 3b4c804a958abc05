#include "susylab/spectral/eigs.hpp"

#include "susylab/spectral/sparse_lu.hpp"

#include <arpack/arpack.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>

namespace susylab::spectral {

namespace {

// the reference ARPACK keeps state in Fortran SAVE variables
std::mutex arpack_mutex;

struct RitzPairs {
  std::vector<Complex> theta;
  CMat vectors;
};

RitzPairs arnoldi(const std::function<Vec(const Vec&)>& op, std::int64_t n, int nev, int max_iter,
                  std::uint64_t seed) {
  const a_int N = static_cast<a_int>(n);
  const a_int ncv = static_cast<a_int>(std::min<std::int64_t>(n, std::max(2 * nev + 1, nev + 20)));
  const a_int lworkl = 3 * ncv * ncv + 6 * ncv;
  std::vector<double> resid(n), V(static_cast<std::size_t>(n) * ncv), workd(3 * n), workl(lworkl);
  std::vector<a_int> iparam(11, 0), ipntr(14, 0);
  iparam[0] = 1;
  iparam[2] = max_iter;
  iparam[6] = 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& r : resid) r = uni(rng);

  std::lock_guard<std::mutex> lock(arpack_mutex);
  a_int ido = 0, info = 1;
  Eigen::Map<Vec> work(workd.data(), 3 * n);
  while (true) {
    arpack::naupd(ido, arpack::bmat::identity, N, arpack::which::largest_magnitude, nev, 0.0,
                  resid.data(), ncv, V.data(), N, iparam.data(), ipntr.data(), workd.data(),
                  workl.data(), lworkl, info);
    if (ido != -1 && ido != 1) break;
    const Vec x = work.segment(ipntr[0] - 1, n);
    work.segment(ipntr[1] - 1, n) = op(x);
  }
  if (info == 1)
    throw Error(ErrorKind::NoConvergence, "Arnoldi iteration hit the restart limit");
  if (info < 0)
    throw Error(ErrorKind::NoConvergence, "Arnoldi iteration failed (info " + std::to_string(info) + ")");

  std::vector<a_int> select(ncv, 0);
  std::vector<double> dr(nev + 1), di(nev + 1), Z(static_cast<std::size_t>(n) * (nev + 1)),
      workev(3 * ncv);
  arpack::neupd(1, arpack::howmny::ritz_vectors, select.data(), dr.data(), di.data(), Z.data(), N,
                0.0, 0.0, workev.data(), arpack::bmat::identity, N, arpack::which::largest_magnitude,
                nev, 0.0, resid.data(), ncv, V.data(), N, iparam.data(), ipntr.data(), workd.data(),
                workl.data(), lworkl, info);
  if (info != 0)
    throw Error(ErrorKind::NoConvergence, "Ritz extraction failed (info " + std::to_string(info) + ")");
  const int nconv = static_cast<int>(iparam[4]);
  RitzPairs out;
  out.vectors.resize(n, nconv);
  Eigen::Map<Mat> z(Z.data(), n, nev + 1);
  for (int j = 0; j < nconv; ++j) {
    out.theta.emplace_back(dr[j], di[j]);
    if (di[j] == 0.0) {
      out.vectors.col(j) = z.col(j).cast<Complex>();
    } else if (j + 1 < nev + 1 && di[j] > 0) {
      const CVec v = z.col(j).cast<Complex>() + Complex(0, 1) * z.col(j + 1).cast<Complex>();
      out.vectors.col(j) = v;
      if (j + 1 < nconv) {
        out.theta.emplace_back(dr[j + 1], di[j + 1]);
        out.vectors.col(j + 1) = v.conjugate();
      }
      ++j;
    } else {
      // unpaired conjugate at the end of the list
      out.theta.pop_back();
    }
  }
  out.vectors.conservativeResize(n, static_cast<Eigen::Index>(out.theta.size()));
  return out;
}

CVec sparse_times(const disc::SparseMatrix& A, const CVec& v) {
  const Vec re = A * v.real();
  const Vec im = A * v.imag();
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

CVec sparse_transpose_times(const disc::SparseMatrix& A, const CVec& v) {
  const Vec re = A.transpose() * v.real();
  const Vec im = A.transpose() * v.imag();
  return re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
}

std::vector<int> order_by_modulus(const std::vector<Complex>& lam) {
  std::vector<int> idx(lam.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double ma = std::abs(lam[a]), mb = std::abs(lam[b]);
    if (ma != mb) return ma < mb;
    return lam[a].imag() > lam[b].imag();
  });
  return idx;
}

bool is_symmetric(const disc::SparseMatrix& A) {
  const disc::SparseMatrix At = A.transpose();
  return (A - At).norm() == 0.0;
}

void scale_left(SpectralResult& res) {
  for (int i = 0; i < res.size(); ++i) {
    const Complex s = res.left.col(i).dot(res.right.col(i));  // l^H r
    res.left.col(i) /= std::conj(s);
  }
}

SpectralResult from_dense(const disc::SparseOperator& op, int k) {
  const Mat P = Mat(op.matrix);
  Eigen::EigenSolver<Mat> es(P, true);
  require(es.info() == Eigen::Success, ErrorKind::NoConvergence, "dense eigensolver failed");
  const CMat V = es.eigenvectors();
  const CMat Vinv = V.inverse();
  std::vector<Complex> lam(es.eigenvalues().data(), es.eigenvalues().data() + P.rows());
  const auto order = order_by_modulus(lam);
  const int m = std::min<int>(k, static_cast<int>(P.rows()));
  SpectralResult res;
  res.h = op.h;
  res.n = op.size();
  res.right.resize(P.rows(), m);
  res.left.resize(P.rows(), m);
  for (int i = 0; i < m; ++i) {
    const int j = order[i];
    res.eigenvalues.push_back(lam[j]);
    const double nr = V.col(j).norm();
    res.right.col(i) = V.col(j) / nr;
    res.left.col(i) = Vinv.row(j).adjoint() * nr;
  }
  res.disc_radius_used = m < P.rows() ? std::abs(lam[order[m]]) : INFINITY;
  for (int i = 0; i < m; ++i) {
    res.residuals.push_back((sparse_times(op.matrix, res.right.col(i)) - res.eigenvalues[i] * res.right.col(i)).norm());
    const CVec l = res.left.col(i);
    res.left_residuals.push_back(
        (sparse_transpose_times(op.matrix, l.conjugate()) - res.eigenvalues[i] * l.conjugate()).norm() /
        l.norm());
  }
  return res;
}

}  // namespace

double SpectralResult::biorthogonality_defect() const {
  const CMat G = left.adjoint() * right;
  double worst = 0.0;
  for (int i = 0; i < G.rows(); ++i)
    for (int j = 0; j < G.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(G(i, j)));
  return worst;
}

SpectralResult dense_spectrum(const disc::SparseOperator& op, int k) { return from_dense(op, k); }

SpectralResult eigs_near_zero(const disc::SparseOperator& op, int k, double tol, int max_iter,
                              const EigsOptions& options) {
  require(k >= 1, ErrorKind::InvalidArgument, "k must be positive");
  const std::int64_t n = op.size();
  int nev = k + std::max(options.extra, 1);
  if (n < nev + 3) {
    SpectralResult res = from_dense(op, k);
    for (double r : res.residuals)
      if (r > tol) throw Error(ErrorKind::NoConvergence, "dense residual above tolerance");
    return res;
  }
  const double sigma = options.shift_factor * op.h;
  const SparseLU lu(op.matrix, sigma);

  while (true) {
    const RitzPairs ritz = arnoldi([&](const Vec& x) { return lu.solve(x); }, n, nev, max_iter,
                                   options.seed);
    std::vector<Complex> lam;
    for (const auto& t : ritz.theta) lam.push_back(sigma + 1.0 / t);
    double reach = 0.0;
    for (const auto& l : lam) reach = std::max(reach, std::abs(l - sigma));
    const auto order = order_by_modulus(lam);
    const double certified = reach - std::abs(sigma);
    const bool enough = static_cast<int>(lam.size()) >= k + 1;
    if (!enough || std::abs(lam[order[k - 1]]) >= certified) {
      if (nev >= n - 3)
        throw Error(ErrorKind::NoConvergence, "cannot certify the k smallest eigenvalues");
      nev = static_cast<int>(std::min<std::int64_t>(2 * nev, n - 3));
      continue;
    }

    SpectralResult res;
    res.h = op.h;
    res.n = n;
    res.shift = sigma;
    res.disc_radius_used = certified;
    res.right.resize(n, k);
    for (int i = 0; i < k; ++i) {
      const int j = order[i];
      res.eigenvalues.push_back(lam[j]);
      CVec v = ritz.vectors.col(j);
      // fix the phase so the largest entry is real positive
      Eigen::Index arg = 0;
      v.cwiseAbs().maxCoeff(&arg);
      v *= std::conj(v[arg]) / std::abs(v[arg]);
      res.right.col(i) = v / v.norm();
      const double r = (sparse_times(op.matrix, res.right.col(i)) - lam[j] * res.right.col(i)).norm();
      if (!(r <= tol))
        throw Error(ErrorKind::NoConvergence, "eigenpair residual " + std::to_string(r) +
                                                  " above tolerance");
      res.residuals.push_back(r);
    }

    if (options.left) {
      if (is_symmetric(op.matrix)) {
        res.left = res.right.conjugate();
      } else {
        const RitzPairs lr = arnoldi([&](const Vec& x) { return lu.solve_transpose(x); }, n, nev,
                                     max_iter, options.seed + 1);
        std::vector<bool> used(lr.theta.size(), false);
        res.left.resize(n, k);
        for (int i = 0; i < k; ++i) {
          int best = -1;
          double dist = INFINITY;
          for (int j = 0; j < static_cast<int>(lr.theta.size()); ++j) {
            if (used[j]) continue;
            const double d = std::abs(sigma + 1.0 / lr.theta[j] - res.eigenvalues[i]);
            if (d < dist) {
              dist = d;
              best = j;
            }
          }
          if (best < 0) throw Error(ErrorKind::NoConvergence, "left eigenvector missing");
          used[best] = true;
          // P^T w = lambda w, so l = conj(w) satisfies l^H P = lambda l^H
          res.left.col(i) = lr.vectors.col(best).conjugate();
        }
      }
      scale_left(res);
      for (int i = 0; i < k; ++i) {
        const CVec w = res.left.col(i).conjugate();
        res.left_residuals.push_back(
            (sparse_transpose_times(op.matrix, w) - res.eigenvalues[i] * w).norm() / w.norm());
      }
    }
    return res;
  }
}

DiscCount count_in_disc(const SpectralResult& result, double radius) {
  require(radius > 0, ErrorKind::InvalidArgument, "radius must be positive");
  require(!result.eigenvalues.empty(), ErrorKind::InsufficientK, "empty spectrum");
  const double last = std::abs(result.eigenvalues.back());
  if (last < 2.0 * radius)
    throw Error(ErrorKind::InsufficientK, "largest computed modulus is below twice the radius");
  DiscCount out;
  out.radius = radius;
  for (const auto& l : result.eigenvalues)
    if (std::abs(l) < radius) ++out.count;
  out.gap_margin = std::abs(result.eigenvalues[out.count]) / radius;
  return out;
}

double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const auto& x : a) {
    int best = -1;
    double d = INFINITY;
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      if (!used[j] && std::abs(b[j] - x) < d) {
        d = std::abs(b[j] - x);
        best = j;
      }
    if (best < 0) return INFINITY;
    used[best] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace susylab::spectral
