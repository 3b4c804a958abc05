#include "susylab/potential/critical_points.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace susylab::potential {

bool Box::contains(const Vec& x) const {
  for (int k = 0; k < dim(); ++k)
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  return true;
}

std::vector<int> CriticalPointReport::minima() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    if (points[i].index == 0) out.push_back(i);
  return out;
}

double CriticalPointReport::effective_barrier() const {
  require(!barriers.empty(), ErrorKind::UnsupportedTopology, "no barrier available");
  double s = std::numeric_limits<double>::infinity();
  for (const auto& b : barriers) s = std::min(s, b.second);
  return s;
}

int morse_index(const Mat& hessian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hessian, Eigen::EigenvaluesOnly);
  return static_cast<int>((es.eigenvalues().array() < 0).count());
}

namespace {

Vec newton_step(const Mat& H, const Vec& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Vec lam = es.eigenvalues();
  const double floor = 1e-14 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  Vec coeff = es.eigenvectors().transpose() * g;
  for (int i = 0; i < lam.size(); ++i) {
    const double l = std::abs(lam[i]) < floor ? (lam[i] < 0 ? -floor : floor) : lam[i];
    coeff[i] /= l;
  }
  return -(es.eigenvectors() * coeff);
}

bool damped_newton(const ScalarField& f, Vec& x, const CriticalSearchOptions& opt) {
  Vec g = f.grad(x);
  double gn = g.norm();
  for (int it = 0; it < opt.max_iter && gn > opt.newton_tol; ++it) {
    const Vec dx = newton_step(f.hess(x), g);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const Vec trial = x + t * dx;
      const Vec gt = f.grad(trial);
      if (std::isfinite(gt.norm()) && gt.norm() < gn) {
        x = trial;
        g = gt;
        gn = gt.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) return false;
  }
  if (!(gn <= opt.newton_tol)) return false;
  // polish so duplicates from different seeds land within the merge radius
  for (int extra = 0; extra < 3; ++extra) {
    const Vec trial = x + newton_step(f.hess(x), g);
    const Vec gt = f.grad(trial);
    if (!(gt.norm() <= gn)) break;
    x = trial;
    g = gt;
    gn = gt.norm();
  }
  return true;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ScalarField& field, const Box& box,
                                                const CriticalSearchOptions& opt) {
  const int n = field.dimension();
  require(box.dim() == n, ErrorKind::DimensionMismatch, "box dimension does not match field");
  require(opt.seeds_per_axis >= 1, ErrorKind::InvalidArgument, "need at least one seed per axis");
  std::int64_t total = 1;
  for (int k = 0; k < n; ++k) total *= opt.seeds_per_axis;

  std::vector<Vec> found;
  for (std::int64_t s = 0; s < total; ++s) {
    Vec x(n);
    std::int64_t rem = s;
    for (int k = n - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % opt.seeds_per_axis);
      rem /= opt.seeds_per_axis;
      const double frac = (i + 0.5) / opt.seeds_per_axis;
      x[k] = box.lo[k] + frac * (box.hi[k] - box.lo[k]);
    }
    if (!damped_newton(field, x, opt)) continue;
    if (!box.contains(x)) continue;
    const double merge = 10.0 * opt.newton_tol;
    bool dup = false;
    for (const auto& y : found)
      if ((y - x).norm() <= merge) {
        dup = true;
        break;
      }
    if (!dup) found.push_back(x);
  }
  if (found.empty())
    throw Error(ErrorKind::NoConvergence, "no critical point converged inside the box");

  std::vector<CriticalPoint> out;
  for (const auto& x : found) {
    CriticalPoint cp;
    cp.location = x;
    cp.value = field.eval(x);
    Eigen::SelfAdjointEigenSolver<Mat> es(field.hess(x), Eigen::EigenvaluesOnly);
    cp.hess_eigs = es.eigenvalues();
    cp.index = static_cast<int>((cp.hess_eigs.array() < 0).count());
    if (opt.strict_morse && cp.hess_eigs.cwiseAbs().minCoeff() < opt.morse_tol)
      throw Error(ErrorKind::NonMorse, "degenerate critical point found");
    out.push_back(cp);
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.value != b.value) return a.value < b.value;
    return std::lexicographical_compare(a.location.data(), a.location.data() + a.location.size(),
                                        b.location.data(), b.location.data() + b.location.size());
  });
  return out;
}

CriticalPointReport barrier_report(const std::vector<CriticalPoint>& points) {
  require(!points.empty(), ErrorKind::InvalidArgument, "barrier report needs critical points");
  CriticalPointReport rep;
  rep.points = points;
  int saddles = 0;
  int minima = 0;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (points[i].index == 1) {
      ++saddles;
      rep.saddle = i;
    }
    if (points[i].index == 0) ++minima;
  }
  if (saddles != 1) rep.saddle = -1;
  if (saddles > 1 || minima > 2) {
    rep.supported = false;
    rep.topology_note = "UnsupportedTopology: " + std::to_string(saddles) + " saddles, " +
                        std::to_string(minima) + " minima";
    return rep;
  }
  if (saddles == 0 || minima == 0) {
    rep.topology_note = "no saddle/minimum pair";
    return rep;
  }
  const double top = points[rep.saddle].value;
  for (int i = 0; i < static_cast<int>(points.size()); ++i)
    if (points[i].index == 0 && points[i].value < top) rep.barriers.emplace_back(i, top - points[i].value);
  const bool only_these = static_cast<int>(points.size()) == saddles + minima;
  rep.is_double_well = only_these && minima == 2 && rep.barriers.size() == 2;
  rep.is_well_and_sea = only_these && minima == 1 && rep.barriers.size() == 1;
  return rep;
}

}  // namespace susylab::potential
