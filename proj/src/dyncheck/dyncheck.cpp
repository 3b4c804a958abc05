#include "susylab/dyncheck/dyncheck.hpp"

#include "susylab/stochastic/sde.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <random>

namespace susylab::dyncheck {

using susy::SusySpec;

std::vector<Vec> lattice_seeds(const potential::Box& box, int per_axis) {
  const int n = box.dim();
  std::int64_t total = 1;
  for (int k = 0; k < n; ++k) total *= per_axis;
  std::vector<Vec> out;
  for (std::int64_t s = 0; s < total; ++s) {
    Vec x(n);
    std::int64_t rem = s;
    for (int k = n - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      x[k] = box.lo[k] + (i + 0.5) / per_axis * (box.hi[k] - box.lo[k]);
    }
    out.push_back(x);
  }
  return out;
}

std::vector<Vec> random_seeds(const potential::Box& box, int count, std::uint64_t seed) {
  stochastic::StreamRng rng(seed, 17);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Vec> out;
  for (int s = 0; s < count; ++s) {
    Vec x(box.dim());
    for (int k = 0; k < box.dim(); ++k) x[k] = box.lo[k] + uni(rng) * (box.hi[k] - box.lo[k]);
    out.push_back(x);
  }
  return out;
}

namespace {

Mat stacked_operator(const SusySpec& spec) {
  const int n = spec.dim;
  Eigen::SelfAdjointEigenSolver<Mat> es(spec.matrix.B);
  const Vec lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Mat K(2 * n, n);
  K.topRows(n) = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  K.bottomRows(n) = 2.0 * spec.matrix.C;
  return K;
}

bool gauss_newton(const SusySpec& spec, const Mat& K, Vec& x, const CriticalSetOptions& opt) {
  Vec F = K * spec.phase.grad(x);
  double fn = F.norm();
  for (int it = 0; it < opt.max_iter && fn > opt.newton_tol; ++it) {
    const Mat J = K * spec.phase.hess(x);
    const Vec dx = -J.completeOrthogonalDecomposition().solve(F);
    double t = 1.0;
    bool ok = false;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      const Vec trial = x + t * dx;
      const Vec Ft = K * spec.phase.grad(trial);
      if (std::isfinite(Ft.norm()) && Ft.norm() < fn) {
        x = trial;
        F = Ft;
        fn = Ft.norm();
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  if (!(fn <= opt.newton_tol)) return false;
  for (int extra = 0; extra < 3; ++extra) {
    const Mat J = K * spec.phase.hess(x);
    const Vec trial = x - J.completeOrthogonalDecomposition().solve(F);
    const Vec Ft = K * spec.phase.grad(trial);
    if (!(Ft.norm() <= fn)) break;
    x = trial;
    F = Ft;
    fn = Ft.norm();
  }
  return true;
}

struct State {
  Vec x;
  Vec xi;
};

State rhs(const SusySpec& spec, const Vec& x, const Vec& xi) {
  const Mat& C = spec.matrix.C;
  return {2.0 * C * spec.phase.grad(x), 2.0 * spec.phase.hess(x) * (C * xi)};
}

void rk4(const SusySpec& spec, Vec& x, Vec& xi, double dt) {
  const State k1 = rhs(spec, x, xi);
  const State k2 = rhs(spec, x + 0.5 * dt * k1.x, xi + 0.5 * dt * k1.xi);
  const State k3 = rhs(spec, x + 0.5 * dt * k2.x, xi + 0.5 * dt * k2.xi);
  const State k4 = rhs(spec, x + dt * k3.x, xi + dt * k3.xi);
  x += dt / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  xi += dt / 6.0 * (k1.xi + 2 * k2.xi + 2 * k3.xi + k4.xi);
}

double p1_of(const SusySpec& spec, const Vec& x, const Vec& xi) {
  return susy::transport_field(spec, x).dot(xi);
}

bool is_trivial_flow(const SusySpec& spec) { return spec.matrix.C.cwiseAbs().maxCoeff() == 0.0; }

}  // namespace

std::vector<PhasePoint> critical_set(const SusySpec& spec, const potential::Box& box,
                                     const std::vector<Vec>& seeds, const CriticalSetOptions& opt) {
  require(box.dim() == spec.dim, ErrorKind::DimensionMismatch, "box dimension does not match spec");
  const Mat K = stacked_operator(spec);
  std::vector<Vec> found;
  for (Vec x : seeds) {
    require(x.size() == spec.dim, ErrorKind::DimensionMismatch, "seed dimension does not match spec");
    if (!gauss_newton(spec, K, x, opt) || !box.contains(x)) continue;
    bool dup = false;
    for (const auto& y : found)
      if ((y - x).norm() <= 1e-3 * (1.0 + x.norm())) dup = true;
    if (!dup) found.push_back(x);
  }
  if (found.empty()) throw Error(ErrorKind::NoConvergence, "no critical point converged inside the box");
  std::sort(found.begin(), found.end(), [&](const Vec& a, const Vec& b) {
    const double fa = spec.phase.eval(a), fb = spec.phase.eval(b);
    if (fa != fb) return fa < fb;
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<PhasePoint> out;
  for (const auto& x : found) {
    if (opt.strict_morse) {
      Eigen::SelfAdjointEigenSolver<Mat> es(spec.phase.hess(x), Eigen::EigenvaluesOnly);
      if (es.eigenvalues().cwiseAbs().minCoeff() < opt.morse_tol)
        throw Error(ErrorKind::NonMorse, "degenerate critical point in the critical set");
    }
    out.push_back({x, Vec::Zero(spec.dim)});
  }
  return out;
}

PhasePoint hp1_flow(const SusySpec& spec, const PhasePoint& rho, double t, double step) {
  require(step > 0, ErrorKind::InvalidArgument, "step must be positive");
  Vec x = rho.x, xi = rho.xi;
  if (t == 0.0 || is_trivial_flow(spec)) return {x, xi};
  const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / step - 1e-12)));
  const double dt = t / n;
  for (long i = 0; i < n; ++i) rk4(spec, x, xi, dt);
  const double p_start = p1_of(spec, rho.x, rho.xi);
  const double p_end = p1_of(spec, x, xi);
  const double scale = susy::transport_field(spec, rho.x).norm() * rho.xi.norm();
  if (std::abs(p_end - p_start) > 1e-8 * std::max(1.0, std::abs(t)) * scale + 1e-14)
    throw Error(ErrorKind::StepTooLarge, "p1 not conserved along the flow");
  return {x, xi};
}

double p_tilde(const SusySpec& spec, const PhasePoint& rho) {
  const auto p = susy::symbol_parts(spec, rho.x, rho.xi);
  return p.p0 + p.p2 / (1.0 + rho.xi.squaredNorm());
}

namespace {

double simpson_average(const SusySpec& spec, const PhasePoint& rho, double T0, int intervals) {
  const int half = intervals / 2;
  const double dt = T0 / intervals;
  std::vector<double> f(intervals + 1);
  f[half] = p_tilde(spec, rho);
  for (int dir : {1, -1}) {
    Vec x = rho.x, xi = rho.xi;
    for (int i = 1; i <= half; ++i) {
      rk4(spec, x, xi, dir * dt);
      if (!(x.norm() < 1e6)) throw Error(ErrorKind::FlowBlowup, "Hamilton flow left the 1e6 box");
      f[half + dir * i] = p_tilde(spec, {x, xi});
    }
  }
  double acc = f.front() + f.back();
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f[i];
  return acc * dt / 3.0 / T0;
}

}  // namespace

double time_average(const SusySpec& spec, const PhasePoint& rho, double T0, int intervals) {
  require(T0 > 0, ErrorKind::InvalidArgument, "T0 must be positive");
  if (is_trivial_flow(spec)) return p_tilde(spec, rho);
  int n = std::max(2, intervals + intervals % 2);
  double prev = simpson_average(spec, rho, T0, n);
  for (int round = 0; round < 10; ++round) {
    n *= 2;
    const double next = simpson_average(spec, rho, T0, n);
    if (std::abs(next - prev) <= 1e-6 * std::abs(next) || next == prev) return next;
    prev = next;
  }
  throw Error(ErrorKind::NoConvergence, "time average did not settle");
}

double nu_flow_measure(const SusySpec& spec, const Vec& x0, double T0, double threshold, int samples) {
  require(T0 > 0 && samples >= 1, ErrorKind::InvalidArgument, "need T0 > 0 and samples >= 1");
  const Mat& B = spec.matrix.B;
  auto p0 = [&](const Vec& x) {
    const Vec g = spec.phase.grad(x);
    return g.dot(B * g);
  };
  auto field = [&](const Vec& x) { return Vec(2.0 * spec.matrix.C * spec.phase.grad(x)); };
  // uniform samples at cell midpoints, reached by RK4 with up to 8 substeps
  // per sample spacing
  const double spacing = T0 / samples;
  const int sub = 8;
  int hits = 0;
  for (int dir : {1, -1}) {
    Vec x = x0;
    double t = 0.0;
    const int count = dir > 0 ? (samples + 1) / 2 : samples / 2;
    for (int i = 0; i < count; ++i) {
      const double target = (i + 0.5) * spacing;
      const double h = (target - t) / sub;
      for (int s = 0; s < sub; ++s) {
        const Vec k1 = field(x);
        const Vec k2 = field(x + 0.5 * dir * h * k1);
        const Vec k3 = field(x + 0.5 * dir * h * k2);
        const Vec k4 = field(x + dir * h * k3);
        x += dir * h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
      }
      t = target;
      if (!(x.norm() <= 1e6)) throw Error(ErrorKind::FlowBlowup, "transport flow left the 1e6 box");
      if (p0(x) >= threshold) ++hits;
    }
  }
  return static_cast<double>(hits) / samples;
}

HypothesisReport verify_hypotheses(const SusySpec& spec, const HypothesisPlan& plan) {
  HypothesisReport rep;
  rep.C = plan.C;
  rep.far_floor = plan.far_floor;
  rep.measure_threshold = plan.measure_threshold;
  rep.measure_floor = plan.measure_floor;
  rep.T0 = plan.T0;
  const int n = spec.dim;
  try {
    const auto seeds = plan.lattice ? lattice_seeds(plan.box, plan.lattice_per_axis)
                                    : random_seeds(plan.box, plan.seeds, plan.seed);
    rep.critical_set = critical_set(spec, plan.box, seeds, plan.critical);
    for (const auto& r : rep.critical_set) rep.indices.push_back(potential::morse_index(spec.phase.hess(r.x)));
    rep.critical_ok = true;
  } catch (const Error& e) {
    rep.note = std::string("critical set: ") + e.what();
    return rep;
  }

  // near-critical two-sided ratio bounds on spheres in R^(2n)
  stochastic::StreamRng rng(plan.seed, 101);
  std::normal_distribution<double> normal;
  std::vector<Vec> dirs;
  for (int k = 0; k < plan.directions; ++k) {
    Vec w(2 * n);
    for (int i = 0; i < 2 * n; ++i) w[i] = normal(rng);
    dirs.push_back(w / w.norm());
  }
  // the coordinate axes are always included
  for (int i = 0; i < 2 * n; ++i) dirs.push_back(Vec::Unit(2 * n, i));
  rep.near_pass = true;
  try {
    for (int j = 0; j < static_cast<int>(rep.critical_set.size()); ++j) {
      for (double r : plan.radii) {
        std::vector<double> ratios(dirs.size());
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < static_cast<int>(dirs.size()); ++k) {
          PhasePoint rho{rep.critical_set[j].x + r * dirs[k].head(n), r * dirs[k].tail(n)};
          ratios[k] = time_average(spec, rho, plan.T0) / (r * r);
        }
        NearRatio nr{j, r, *std::min_element(ratios.begin(), ratios.end()),
                     *std::max_element(ratios.begin(), ratios.end())};
        if (!(nr.min_ratio >= 1.0 / plan.C && nr.max_ratio <= plan.C)) rep.near_pass = false;
        rep.near_ratios.push_back(nr);
      }
    }
  } catch (const Error& e) {
    rep.near_pass = false;
    rep.note += std::string("near: ") + e.what() + "; ";
  }

  // far region
  rep.far_min = INFINITY;
  try {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<PhasePoint> far;
    int attempts = 0;
    while (static_cast<int>(far.size()) < plan.far_samples && attempts < 100 * plan.far_samples) {
      ++attempts;
      PhasePoint p{Vec(n), Vec(n)};
      for (int i = 0; i < n; ++i) {
        p.x[i] = plan.box.lo[i] + uni(rng) * (plan.box.hi[i] - plan.box.lo[i]);
        p.xi[i] = (2 * uni(rng) - 1) * plan.xi_max;
      }
      bool near = false;
      for (const auto& c : rep.critical_set)
        if (std::sqrt((p.x - c.x).squaredNorm() + p.xi.squaredNorm()) < plan.far_exclusion) near = true;
      if (!near) far.push_back(p);
    }
    std::vector<double> vals(far.size());
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < static_cast<int>(far.size()); ++k) vals[k] = time_average(spec, far[k], plan.T0);
    for (double v : vals) rep.far_min = std::min(rep.far_min, v);
    rep.far_pass = !far.empty() && rep.far_min >= plan.far_floor;
  } catch (const Error& e) {
    rep.far_pass = false;
    rep.note += std::string("far: ") + e.what() + "; ";
  }

  // measure condition along the transport flow
  rep.measure_min = INFINITY;
  try {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<Vec> base;
    int attempts = 0;
    while (static_cast<int>(base.size()) < plan.measure_points && attempts < 100 * plan.measure_points) {
      ++attempts;
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = plan.box.lo[i] + uni(rng) * (plan.box.hi[i] - plan.box.lo[i]);
      bool near = false;
      for (const auto& c : rep.critical_set)
        if ((x - c.x).norm() < plan.measure_exclusion) near = true;
      if (!near) base.push_back(x);
    }
    rep.measure_fractions.resize(base.size());
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < static_cast<int>(base.size()); ++k)
      rep.measure_fractions[k] = {base[k], nu_flow_measure(spec, base[k], plan.T0, plan.measure_threshold,
                                                           plan.measure_time_samples)};
    for (const auto& m : rep.measure_fractions) rep.measure_min = std::min(rep.measure_min, m.fraction);
    rep.measure_pass = !base.empty() && rep.measure_min >= plan.measure_floor;
  } catch (const Error& e) {
    rep.measure_pass = false;
    rep.note += std::string("measure: ") + e.what() + "; ";
  }
  rep.pass = rep.critical_ok && rep.near_pass && rep.far_pass && rep.measure_pass;
  return rep;
}

}  // namespace susylab::dyncheck
