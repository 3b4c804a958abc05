#include "susylab/semigroup/evolve.hpp"

#include "susylab/spectral/sparse_lu.hpp"
#include "susylab/spectral/splitting.hpp"

#include <algorithm>
#include <cmath>

namespace susylab::semigroup {

Trajectory evolve(const disc::SparseOperator& op, const Vec& u0, double t_end, double dt,
                  const std::vector<double>& sample_times, const EvolveOptions& options) {
  require(dt > 0 && t_end >= 0, ErrorKind::InvalidArgument, "need dt > 0 and t_end >= 0");
  if (u0.size() != op.size()) throw Error(ErrorKind::LengthMismatch, "initial state has the wrong length");
  const double a = dt / (2.0 * op.h);
  const disc::SparseMatrix scaled = a * op.matrix;
  const spectral::SparseLU lu(scaled, -1.0);

  const long steps = std::lround(t_end / dt);
  std::vector<std::pair<long, int>> wanted;
  for (int i = 0; i < static_cast<int>(sample_times.size()); ++i) {
    const long s = std::lround(sample_times[i] / dt);
    require(s >= 0 && s <= steps, ErrorKind::InvalidArgument, "sample time outside [0, t_end]");
    wanted.emplace_back(s, i);
  }
  std::sort(wanted.begin(), wanted.end());

  Trajectory tr;
  tr.dt = dt;
  tr.times.resize(sample_times.size());
  tr.states.resize(u0.size(), static_cast<Eigen::Index>(sample_times.size()));
  std::size_t next = 0;
  Vec u = u0;
  auto record = [&](long step) {
    while (next < wanted.size() && wanted[next].first == step) {
      tr.times[wanted[next].second] = step * dt;
      tr.states.col(wanted[next].second) = u;
      ++next;
    }
  };
  record(0);
  for (long s = 1; s <= steps; ++s) {
    const double before = u.norm();
    if (s <= options.startup_steps) {
      // two implicit Euler steps of dt/2 share the matrix I + dt/(2h) P
      u = lu.solve(u);
      u = lu.solve(u);
    } else {
      u = lu.solve(Vec(u - scaled * u));
    }
    const double after = u.norm();
    if (!std::isfinite(after) || after > 1.1 * before)
      throw Error(ErrorKind::StepRejected, "state norm grew by more than 10% in one step");
    record(s);
  }
  return tr;
}

namespace {

CVec metastable_part(const spectral::SpectralResult& sp, const std::vector<int>& idx, const Vec& u0,
                     double t) {
  const CVec u = u0.cast<Complex>();
  CVec out = CVec::Zero(u.size());
  for (int i : idx) {
    const Complex c = sp.left.col(i).dot(u);
    out += std::exp(-t * sp.eigenvalues[i] / sp.h) * c * sp.right.col(i);
  }
  return out;
}

}  // namespace

EvolutionReport equilibration_report(const disc::SparseOperator& op,
                                     const spectral::SpectralResult& spectral, const Vec& u0,
                                     const std::vector<double>& times, double dt,
                                     const std::vector<int>& metastable, const EvolveOptions& options) {
  require(!times.empty(), ErrorKind::InvalidArgument, "need sample times");
  int last = 0;
  for (int i : metastable) {
    require(i >= 0 && i < spectral.size(), ErrorKind::InvalidArgument, "metastable index out of range");
    last = std::max(last, i);
  }
  require(last + 1 < spectral.size(), ErrorKind::InvalidArgument,
          "spectral result must contain the eigenvalue after the metastable set");
  const double t_end = *std::max_element(times.begin(), times.end());
  const Trajectory tr = evolve(op, u0, t_end, dt, times, options);

  EvolutionReport rep;
  rep.dt_used = dt;
  rep.times = tr.times;
  const double n0 = u0.norm();
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const Vec u = tr.states.col(static_cast<Eigen::Index>(i));
    const CVec rem = u.cast<Complex>() - metastable_part(spectral, metastable, u0, tr.times[i]);
    const double r = rem.norm();
    rep.remainder_norms.push_back(r);
    rep.state_norms.push_back(u.norm());
    if (r >= 1e-8 * n0 && r <= 1e-2 * n0) {
      fx.push_back(tr.times[i]);
      fy.push_back(std::log(r));
    }
  }
  for (std::size_t i = 1; i < rep.times.size(); ++i)
    if (rep.times[i] >= 5 * dt && rep.times[i - 1] >= 5 * dt &&
        rep.remainder_norms[i] > rep.remainder_norms[i - 1] + 1e-12 * n0)
      rep.monotone = false;
  rep.window_points = static_cast<int>(fx.size());
  if (fx.size() < 3) throw Error(ErrorKind::WindowEmpty, "remainder never spans the fit window");
  rep.fitted_rate = -spectral::fit_line(fx, fy).slope;
  rep.gap = spectral.eigenvalues[last + 1].real() / spectral.h;
  rep.ratio = rep.fitted_rate / rep.gap;
  return rep;
}

double commutation_defect(const disc::SparseOperator& op, const spectral::SpectralResult& spectral,
                          const std::vector<int>& indices, const Vec& u, double t, double dt) {
  const auto P = spectral::projection(spectral, indices);
  const Trajectory tr = evolve(op, u, t, dt, {t});
  const CVec lhs = P.apply(tr.states.col(0).cast<Complex>());
  // exp(-t P_Pi / h) Pi u in the eigenbasis, with the Crank-Nicolson factor
  // so the comparison isolates the projection
  CVec rhs = CVec::Zero(u.size());
  const double a = dt / (2.0 * spectral.h);
  const long steps = std::lround(t / dt);
  for (int i : indices) {
    const Complex lam = spectral.eigenvalues[i];
    const Complex g = std::pow((1.0 - a * lam) / (1.0 + a * lam), static_cast<double>(steps));
    rhs += g * spectral.left.col(i).dot(u.cast<Complex>()) * spectral.right.col(i);
  }
  return (lhs - rhs).norm();
}

}  // namespace susylab::semigroup
