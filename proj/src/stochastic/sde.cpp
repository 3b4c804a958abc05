#include "susylab/stochastic/sde.hpp"

#include "susylab/potential/catalog.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <exception>
#include <random>
#include <sstream>

namespace susylab::stochastic {

Vec SdeModel::b(const Vec& x) const {
  Vec out(dim);
  drift(x, out);
  return out;
}

SdeModel make_overdamped(const potential::ScalarField& V, double gamma, double T) {
  require(gamma > 0, ErrorKind::InvalidArgument, "gamma must be positive");
  require(T >= 0, ErrorKind::InvalidArgument, "temperature must be nonnegative");
  const int n = V.dimension();
  SdeModel m;
  m.dim = n;
  m.drift = [V, gamma](const Vec& x, Vec& out) { out = -gamma * V.grad(x); };
  m.sigma = std::sqrt(2 * gamma * T) * Mat::Identity(n, n);
  m.T1 = m.T2 = T;
  m.family = "overdamped";
  std::ostringstream id;
  id.precision(17);
  id << "overdamped:" << V.name() << ":gamma=" << gamma << ":T=" << T;
  m.id = id.str();
  return m;
}

SdeModel make_kinetic(const potential::ScalarField& V, double gamma, double T) {
  require(gamma >= 0, ErrorKind::InvalidArgument, "gamma must be nonnegative");
  require(T >= 0, ErrorKind::InvalidArgument, "temperature must be nonnegative");
  const int n = V.dimension();
  SdeModel m;
  m.dim = 2 * n;
  m.drift = [V, gamma, n](const Vec& q, Vec& out) {
    out.head(n) = q.tail(n);
    out.tail(n) = -gamma * q.tail(n) - V.grad(Vec(q.head(n)));
  };
  m.sigma = Mat::Zero(2 * n, n);
  m.sigma.bottomRows(n) = std::sqrt(2 * gamma * T) * Mat::Identity(n, n);
  m.T1 = m.T2 = T;
  m.family = "kinetic";
  std::ostringstream id;
  id.precision(17);
  id << "kinetic:" << V.name() << ":gamma=" << gamma << ":T=" << T;
  m.id = id.str();
  return m;
}

SdeModel make_chain(const potential::ScalarField& V1, const potential::ScalarField& V2,
                    const potential::ScalarField& Vc, double gamma, double T1, double T2) {
  const int d = V1.dimension();
  if (V2.dimension() != d || Vc.dimension() != d)
    throw Error(ErrorKind::DimensionMismatch, "chain potentials must share one dimension");
  require(gamma > 0 && T1 > 0 && T2 > 0, ErrorKind::InvalidArgument,
          "chain needs positive friction and temperatures");
  const auto V = potential::chain_potential(V1, V2, Vc);
  const int m = 2 * d;
  SdeModel s;
  s.dim = 3 * m;
  s.drift = [V, gamma, m](const Vec& q, Vec& out) {
    const auto x = q.head(m);
    const auto y = q.segment(m, m);
    const auto z = q.tail(m);
    out.head(m) = y;
    out.segment(m, m) = z - V.grad(Vec(x));
    out.tail(m) = gamma * (x - z);
  };
  s.sigma = Mat::Zero(3 * m, m);
  for (int i = 0; i < d; ++i) {
    s.sigma(2 * m + i, i) = -std::sqrt(2 * gamma * T1);
    s.sigma(2 * m + d + i, d + i) = -std::sqrt(2 * gamma * T2);
  }
  s.T1 = T1;
  s.T2 = T2;
  s.family = "chain";
  std::ostringstream id;
  id.precision(17);
  id << "chain:" << V.name() << ":gamma=" << gamma << ":T1=" << T1 << ":T2=" << T2;
  s.id = id.str();
  return s;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {}

StreamRng::result_type StreamRng::operator()() {
  return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * (++counter_));
}

double estimate_lipschitz(const SdeModel& model, const Vec& lo, const Vec& hi, int samples,
                          std::uint64_t seed) {
  require(lo.size() == model.dim && hi.size() == model.dim, ErrorKind::DimensionMismatch,
          "Lipschitz box has the wrong dimension");
  StreamRng rng(seed, 0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double best = 0.0;
  Vec x(model.dim), bp(model.dim), bm(model.dim);
  Mat J(model.dim, model.dim);
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < model.dim; ++i) x[i] = lo[i] + uni(rng) * (hi[i] - lo[i]);
    for (int j = 0; j < model.dim; ++j) {
      const double step = 1e-6 * (1.0 + std::abs(x[j]));
      Vec xp = x, xm = x;
      xp[j] += step;
      xm[j] -= step;
      model.drift(xp, bp);
      model.drift(xm, bm);
      J.col(j) = (bp - bm) / (2 * step);
    }
    Eigen::JacobiSVD<Mat> svd(J);
    best = std::max(best, svd.singularValues()[0]);
  }
  return best;
}

TrajectoryEnsemble simulate_ensemble(const SdeModel& model, const EnsembleOptions& opt) {
  require(opt.n_traj >= 1 && opt.dt > 0 && opt.t_end >= 0 && opt.stride >= 1,
          ErrorKind::InvalidArgument, "bad ensemble options");
  require(opt.x0.size() == model.dim, ErrorKind::DimensionMismatch, "initial state has the wrong dimension");
  if (opt.lip_lo.size() == model.dim && opt.lip_hi.size() == model.dim) {
    const double lip = estimate_lipschitz(model, opt.lip_lo, opt.lip_hi);
    if (lip > 0 && opt.dt > 0.1 / lip)
      throw Error(ErrorKind::StepTooLarge, "dt exceeds 0.1 / Lip(b) = " + std::to_string(0.1 / lip));
  }
  const long steps = std::lround(opt.t_end / opt.dt);
  TrajectoryEnsemble ens;
  ens.dim = model.dim;
  ens.n_traj = opt.n_traj;
  ens.n_snap = static_cast<int>(steps / opt.stride) + 1;
  ens.stride = opt.stride;
  ens.dt = opt.dt;
  ens.t_end = opt.t_end;
  ens.seed = opt.seed;
  ens.model_id = model.id;
  ens.data.assign(static_cast<std::size_t>(ens.n_traj) * ens.n_snap * ens.dim, 0.0);

  // sparse noise structure
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> noise;
  for (int r = 0; r < model.sigma.rows(); ++r)
    for (int c = 0; c < model.sigma.cols(); ++c)
      if (model.sigma(r, c) != 0.0) noise.push_back({r, c, model.sigma(r, c)});
  const int m = static_cast<int>(model.sigma.cols());
  const double sq = std::sqrt(opt.dt);

  std::vector<std::exception_ptr> errors(opt.n_traj);
#pragma omp parallel for schedule(dynamic, 8)
  for (int tj = 0; tj < opt.n_traj; ++tj) {
    try {
      StreamRng rng(opt.seed, static_cast<std::uint64_t>(tj));
      std::normal_distribution<double> normal;
      Vec x = opt.x0, b(model.dim);
      std::vector<double> xi(m);
      double* out = ens.data.data() + static_cast<std::size_t>(tj) * ens.n_snap * ens.dim;
      std::copy(x.data(), x.data() + ens.dim, out);
      for (long s = 1; s <= steps; ++s) {
        model.drift(x, b);
        for (int c = 0; c < m; ++c) xi[c] = normal(rng);
        x += opt.dt * b;
        for (const auto& e : noise) x[e.row] += e.value * sq * xi[e.col];
        if (!(x.cwiseAbs().maxCoeff() <= 1e6))
          throw Error(ErrorKind::Blowup, "trajectory left the 1e6 box; dt is too large");
        if (s % opt.stride == 0) {
          std::copy(x.data(), x.data() + ens.dim, out + (s / opt.stride) * ens.dim);
        }
      }
    } catch (...) {
      errors[tj] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return ens;
}

}  // namespace susylab::stochastic
