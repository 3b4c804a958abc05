#include "susylab/stochastic/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace susylab::stochastic {

namespace {

struct Blocks {
  std::vector<int> x;
  std::vector<int> y;
  potential::ScalarField effective;
};

Blocks blocks_of(const susy::SusySpec& spec) {
  Blocks b;
  int xs = spec.dim, ys = 0;
  switch (spec.family) {
    case susy::Family::Witten:
    case susy::Family::Custom:
      b.effective = spec.phase;
      break;
    case susy::Family::Kfp:
      xs = ys = spec.dim / 2;
      b.effective = spec.effective;
      break;
    case susy::Family::Chain:
      xs = ys = spec.dim / 3;
      b.effective = spec.effective;
      break;
  }
  for (int i = 0; i < xs; ++i) b.x.push_back(i);
  for (int i = 0; i < ys; ++i) b.y.push_back(xs + i);
  return b;
}

}  // namespace

std::function<double(const Vec&)> maxwellian_marginal_log(const susy::SusySpec& spec,
                                                          const std::vector<int>& axes, double h,
                                                          double quad_half_width) {
  require(!axes.empty() && axes.size() <= 2, ErrorKind::InvalidArgument, "choose one or two axes");
  require(h > 0, ErrorKind::InvalidArgument, "h must be positive");
  const Blocks b = blocks_of(spec);
  if (spec.family == susy::Family::Custom && static_cast<int>(axes.size()) != spec.dim)
    throw Error(ErrorKind::InvalidArgument, "custom specs need every axis in the marginal");
  std::vector<int> pos_in_x, pos_in_y;  // slots of `axes` that are position / velocity axes
  std::vector<int> x_axes;
  for (int s = 0; s < static_cast<int>(axes.size()); ++s) {
    const int a = axes[s];
    if (std::find(b.x.begin(), b.x.end(), a) != b.x.end()) {
      pos_in_x.push_back(s);
      x_axes.push_back(a);
    } else if (std::find(b.y.begin(), b.y.end(), a) != b.y.end()) {
      pos_in_y.push_back(s);
    } else {
      throw Error(ErrorKind::InvalidArgument, "marginal over this axis is not available in closed form");
    }
  }
  const int nx = static_cast<int>(b.x.size());
  std::vector<int> hidden;
  for (int a : b.x)
    if (std::find(x_axes.begin(), x_axes.end(), a) == x_axes.end()) hidden.push_back(a);
  if (x_axes.empty()) hidden.clear();
  require(hidden.size() <= 2, ErrorKind::InvalidArgument,
          "marginal needs quadrature over more than two hidden coordinates");
  const potential::ScalarField eff = b.effective;
  const int q = 81;
  return [=](const Vec& p) {
    double log_y = 0.0;
    for (int s : pos_in_y) log_y -= p[s] * p[s] / h;
    if (x_axes.empty()) return log_y;
    Vec x = Vec::Zero(nx);
    for (std::size_t i = 0; i < pos_in_x.size(); ++i) x[x_axes[i]] = p[pos_in_x[i]];
    if (hidden.empty()) return log_y - 2.0 * eff.eval(x) / h;
    // log-sum-exp over a trapezoid grid of the hidden coordinates
    const double step = 2 * quad_half_width / (q - 1);
    std::vector<double> vals;
    const int total = hidden.size() == 1 ? q : q * q;
    vals.reserve(total);
    for (int t = 0; t < total; ++t) {
      x[hidden[0]] = -quad_half_width + (t % q) * step;
      if (hidden.size() == 2) x[hidden[1]] = -quad_half_width + (t / q) * step;
      vals.push_back(-2.0 * eff.eval(x) / h);
    }
    const double mx = *std::max_element(vals.begin(), vals.end());
    double acc = 0.0;
    for (double v : vals) acc += std::exp(v - mx);
    return log_y + mx + std::log(acc);
  };
}

InvariantReport invariant_distance(const TrajectoryEnsemble& ens, const susy::SusySpec& spec, double h,
                                   const InvariantOptions& opt) {
  const int na = static_cast<int>(opt.axes.size());
  require(na >= 1 && na <= 2, ErrorKind::InvalidArgument, "choose one or two axes");
  for (int a : opt.axes) require(a >= 0 && a < ens.dim, ErrorKind::InvalidArgument, "axis out of range");
  require(opt.bins >= 1, ErrorKind::InvalidArgument, "need at least one bin");
  require(opt.burn_in >= 0 && opt.burn_in < 1, ErrorKind::InvalidArgument, "burn-in must be in [0, 1)");
  int first = 0;
  while (first < ens.n_snap && ens.snapshot_time(first) < opt.burn_in * ens.t_end) ++first;

  InvariantReport rep;
  rep.total_bins = na == 1 ? opt.bins : opt.bins * opt.bins;
  const long available = static_cast<long>(ens.n_snap - first) * ens.n_traj;
  if (available < 10L * rep.total_bins)
    throw Error(ErrorKind::TooFewSamples, "need at least 10 samples per bin");

  rep.lo = opt.lo;
  rep.hi = opt.hi;
  if (rep.lo.size() != na || rep.hi.size() != na) {
    rep.lo = Vec::Constant(na, std::numeric_limits<double>::infinity());
    rep.hi = Vec::Constant(na, -std::numeric_limits<double>::infinity());
    for (int t = 0; t < ens.n_traj; ++t)
      for (int s = first; s < ens.n_snap; ++s)
        for (int a = 0; a < na; ++a) {
          const double v = ens.at(t, s)[opt.axes[a]];
          rep.lo[a] = std::min(rep.lo[a], v);
          rep.hi[a] = std::max(rep.hi[a], v);
        }
    for (int a = 0; a < na; ++a) {
      const double pad = 1e-9 * std::max(1.0, rep.hi[a] - rep.lo[a]);
      rep.lo[a] -= pad;
      rep.hi[a] += pad;
    }
  }
  Vec width(na);
  for (int a = 0; a < na; ++a) width[a] = (rep.hi[a] - rep.lo[a]) / opt.bins;

  rep.empirical.assign(rep.total_bins, 0.0);
  for (int t = 0; t < ens.n_traj; ++t)
    for (int s = first; s < ens.n_snap; ++s) {
      int bin = 0;
      bool inside = true;
      for (int a = 0; a < na; ++a) {
        const double v = ens.at(t, s)[opt.axes[a]];
        const int k = static_cast<int>(std::floor((v - rep.lo[a]) / width[a]));
        if (k < 0 || k >= opt.bins) inside = false;
        bin = bin * opt.bins + std::clamp(k, 0, opt.bins - 1);
      }
      if (!inside) continue;
      rep.empirical[bin] += 1.0;
      ++rep.samples;
    }
  if (rep.samples < 10L * rep.total_bins)
    throw Error(ErrorKind::TooFewSamples, "need at least 10 samples per bin");
  for (auto& e : rep.empirical) e /= static_cast<double>(rep.samples);

  const auto logp = maxwellian_marginal_log(spec, opt.axes, h, opt.quad_half_width);
  const int sub = std::max(1, opt.sub);
  std::vector<double> logs(static_cast<std::size_t>(rep.total_bins) * (na == 1 ? sub : sub * sub));
#pragma omp parallel for schedule(static)
  for (int bin = 0; bin < rep.total_bins; ++bin) {
    const int per = na == 1 ? sub : sub * sub;
    Vec p(na);
    for (int j = 0; j < per; ++j) {
      if (na == 1) {
        p[0] = rep.lo[0] + (bin + (j + 0.5) / sub) * width[0];
      } else {
        const int b0 = bin / opt.bins, b1 = bin % opt.bins;
        p[0] = rep.lo[0] + (b0 + (j / sub + 0.5) / sub) * width[0];
        p[1] = rep.lo[1] + (b1 + (j % sub + 0.5) / sub) * width[1];
      }
      logs[static_cast<std::size_t>(bin) * per + j] = logp(p);
    }
  }
  const double mx = *std::max_element(logs.begin(), logs.end());
  const int per = na == 1 ? sub : sub * sub;
  rep.exact.assign(rep.total_bins, 0.0);
  double total = 0.0;
  for (int bin = 0; bin < rep.total_bins; ++bin) {
    for (int j = 0; j < per; ++j) rep.exact[bin] += std::exp(logs[static_cast<std::size_t>(bin) * per + j] - mx);
    total += rep.exact[bin];
  }
  for (auto& e : rep.exact) e /= total;
  double tv = 0.0;
  for (int bin = 0; bin < rep.total_bins; ++bin) tv += std::abs(rep.empirical[bin] - rep.exact[bin]);
  rep.tv = 0.5 * tv;
  return rep;
}

TransitionStats transition_statistics(const TrajectoryEnsemble& ens,
                                      const potential::CriticalPointReport& wells, double radius,
                                      int min_transitions) {
  require(wells.is_double_well, ErrorKind::BadTopology, "transition statistics need a double well");
  auto minima = wells.minima();
  std::sort(minima.begin(), minima.end(), [&](int a, int b) {
    return wells.points[a].location[0] < wells.points[b].location[0];
  });
  const Vec A = wells.points[minima[0]].location;
  const Vec B = wells.points[minima[1]].location;
  const int n = static_cast<int>(A.size());
  require(n <= ens.dim, ErrorKind::DimensionMismatch, "wells live in more dimensions than the ensemble");
  require(radius > 0 && 2 * radius < (A - B).norm(), ErrorKind::InvalidArgument,
          "radius must be positive and smaller than half the well separation");

  std::vector<double> fwd, bwd;
  for (int t = 0; t < ens.n_traj; ++t) {
    int last = -1;
    double entered = 0.0;
    for (int s = 0; s < ens.n_snap; ++s) {
      const Eigen::Map<const Vec> x(ens.at(t, s), n);
      int in = -1;
      if ((x - A).norm() < radius) in = 0;
      else if ((x - B).norm() < radius) in = 1;
      if (in < 0 || in == last) continue;
      const double now = ens.snapshot_time(s);
      if (last == 0) fwd.push_back(now - entered);
      if (last == 1) bwd.push_back(now - entered);
      last = in;
      entered = now;
    }
  }
  auto stats = [](const std::vector<double>& v, double& mean, double& se) {
    mean = se = 0.0;
    if (v.empty()) return;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (v.size() < 2) return;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size() - 1);
    se = std::sqrt(var / static_cast<double>(v.size()));
  };
  TransitionStats out;
  out.radius = radius;
  out.forward_count = static_cast<int>(fwd.size());
  out.backward_count = static_cast<int>(bwd.size());
  stats(fwd, out.forward_mean, out.forward_se);
  stats(bwd, out.backward_mean, out.backward_se);
  std::vector<double> all = fwd;
  all.insert(all.end(), bwd.begin(), bwd.end());
  out.count = static_cast<int>(all.size());
  stats(all, out.mean, out.se);
  if (out.count < min_transitions)
    throw Error(ErrorKind::TooFewTransitions,
                "observed " + std::to_string(out.count) + " transitions, need " + std::to_string(min_transitions));
  return out;
}

}  // namespace susylab::stochastic
