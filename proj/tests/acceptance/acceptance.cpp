// One line per acceptance criterion; exit status is the number of failures.

#include "susylab/cli/commands.hpp"
#include "susylab/cli/config.hpp"
#include "susylab/disc/discretize.hpp"
#include "susylab/dyncheck/dyncheck.hpp"
#include "susylab/potential/catalog.hpp"
#include "susylab/potential/critical_points.hpp"
#include "susylab/potential/sublevel.hpp"
#include "susylab/semigroup/evolve.hpp"
#include "susylab/spectral/eigs.hpp"
#include "susylab/spectral/projection.hpp"
#include "susylab/spectral/splitting.hpp"
#include "susylab/stochastic/sde.hpp"
#include "susylab/stochastic/statistics.hpp"
#include "susylab/susy/quadratic_model.hpp"
#include "susylab/susy/susy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace susylab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

const auto kDoubleWell = potential::quartic_double_well(1.0);

// Boxes and spacing rules used for the double well throughout.
const Vec kWittenLo = Vec::Constant(1, -2.5);
constexpr double kWittenSpacing = 0.05;
const Vec kKfpLo = (Vec(2) << -2.2, -1.6).finished();
constexpr double kKfpSpacing = 0.2;

struct Family {
  std::string name;
  susy::SusySpec spec;
  Vec lo;
  Vec hi;
  double spacing_over_h;

  disc::Grid grid(double h) const { return disc::Grid::with_spacing(lo, hi, spacing_over_h * h); }
  disc::SparseOperator op(double h) const { return disc::discretize(spec, grid(h), h); }
};

Family witten_dw() { return {"witten", susy::assemble_witten(1.0, kDoubleWell), kWittenLo, -kWittenLo, kWittenSpacing}; }
Family kfp_dw() { return {"kfp", susy::assemble_kfp(1.0, kDoubleWell), kKfpLo, -kKfpLo, kKfpSpacing}; }
// Velocity box wide enough that the truncated Maxwellian tail is below 1e-8 at h = 0.2.
Family kfp_dw_wide() {
  const Vec hi = (Vec(2) << 2.5, 2.8).finished();
  return {"kfp", susy::assemble_kfp(1.0, kDoubleWell), -hi, hi, kKfpSpacing};
}
Family well_and_sea() {
  return {"well-and-sea", susy::assemble_witten(1.0, potential::well_and_sea()), Vec::Constant(1, -1.6),
          Vec::Constant(1, 2.5), 0.05};
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

std::string fmt(Complex z) { return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

Vec random_unit(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vec v(n);
  for (auto& x : v) x = g(rng);
  return v.normalized();
}

void criterion1(Outcome& o) {
  Stopwatch sw;
  const double h = 0.05;
  const auto spec = susy::assemble_witten(1.0, potential::quadratic());
  const auto r = spectral::eigs_near_zero(disc::discretize(spec, disc::Grid({{-8, 8, 1601}}), h), 4);
  const double t = sw.seconds();
  o.check(std::abs(r.eigenvalues[0]) <= 1e-8, "|lambda_0| <= 1e-8");
  double worst = 0;
  for (int n = 1; n < 4; ++n) worst = std::max(worst, std::abs(r.eigenvalues[n] - n * h) / (n * h));
  o.check(worst <= 1e-3, "relative error <= 1e-3");
  o.check(t <= 10, "runtime <= 10 s");
  o.detail << "|lambda_0|=" << fmt(std::abs(r.eigenvalues[0])) << " max rel err=" << fmt(worst) << " time=" << fmt(t) << "s";
}

void criterion2(Outcome& o) {
  Stopwatch sw;
  const double h = 0.1;
  const auto spec = susy::assemble_kfp(1.0, potential::quadratic());
  const auto levels = susy::quadratic_model_levels(spec, Vec::Zero(2), 4);
  const auto op = disc::discretize(spec, disc::Grid::with_spacing(Vec::Constant(2, -2.5), Vec::Constant(2, 2.5), 0.2 * h), h);
  const auto r = spectral::eigs_near_zero(op, 4);
  const double t = sw.seconds();
  double worst = 0;
  for (const auto& l : levels) {
    const Complex target = h * l;
    double best = INFINITY;
    for (const auto& mu : r.eigenvalues) best = std::min(best, std::abs(mu - target));
    // the zero level is measured against the cluster scale h
    worst = std::max(worst, best / std::max(std::abs(target), h));
  }
  o.check(worst <= 0.02, "relative error <= 2%");
  o.check(t <= 60, "runtime <= 60 s");
  o.detail << "eigenvalues";
  for (const auto& mu : r.eigenvalues) o.detail << " " << fmt(mu);
  o.detail << " max rel err=" << fmt(worst) << " time=" << fmt(t) << "s";
}

void criterion3(Outcome& o) {
  for (const auto& fam : {witten_dw(), kfp_dw(), well_and_sea()}) {
    const bool sea = fam.name == "well-and-sea";
    for (double h : {0.08, 0.1}) {
      const auto r = spectral::eigs_near_zero(fam.op(h), 4);
      const int count = spectral::count_in_disc(r, h / 10).count;
      const Complex mu1 = r.eigenvalues[sea ? 0 : 1];
      const std::string tag = fam.name + " h=" + fmt(h);
      o.check(count == (sea ? 1 : 2), tag + " count");
      o.check(std::abs(mu1.imag()) <= 1e-10 * std::abs(mu1) + 1e-14, tag + " mu_1 real");
      o.check(mu1.real() > 0, tag + " mu_1 > 0");
      o.detail << tag << ": count=" << count << " mu_1=" << fmt(mu1) << "; ";
    }
  }
}

void criterion4(Outcome& o) {
  Stopwatch sw;
  // Witten through the bundled configuration and the command layer
  const fs::path out = fs::temp_directory_path() / ("susylab_acceptance_" + std::to_string(::getpid()));
  const auto cfg = cli::ExperimentConfig::load(std::string(SUSYLAB_CONFIG_DIR) + "/witten_double_well.cfg");
  cli::validate(cfg, "splitting");
  fs::create_directories(out);
  cli::cmd_splitting(cfg, out);
  std::ifstream in(out / "splitting.json");
  const auto j = cli::Json::parse(in);
  fs::remove_all(out);
  const double ws = j["slope"], wr = j["r_squared"];
  bool wpos = true;
  for (const auto& s : j["samples"]) wpos = wpos && s["prefactor"].get<double>() > 0;
  o.check(std::abs(ws + 0.5) <= 0.05 * 0.5, "witten slope within 5%");
  o.check(wr >= 0.999, "witten r^2 >= 0.999");
  o.check(wpos, "witten prefactors positive");

  spectral::SplittingProblem pb;
  const auto k = kfp_dw();
  pb.spec = k.spec;
  pb.policy = {k.lo, k.hi, k.spacing_over_h};
  pb.barrier = 0.25;
  const auto fit = spectral::splitting_sweep(pb, {0.05, 0.065, 0.08, 0.1, 0.125});
  const bool kpos = std::all_of(fit.prefactors.begin(), fit.prefactors.end(), [](double a) { return a > 0; });
  o.check(std::abs(fit.slope + 0.5) <= 0.1 * 0.5, "kfp slope within 10%");
  o.check(fit.r_squared >= 0.999, "kfp r^2 >= 0.999");
  o.check(kpos, "kfp prefactors positive");
  const double t = sw.seconds();
  o.check(t <= 600, "runtime <= 10 min");
  o.detail << "witten slope=" << fmt(ws) << " r2=" << fmt(wr) << "; kfp slope=" << fmt(fit.slope)
           << " r2=" << fmt(fit.r_squared) << "; time=" << fmt(t) << "s";
}

void criterion5(Outcome& o) {
  for (const auto& fam : {witten_dw(), kfp_dw()}) {
    std::vector<double> n0, n1;
    for (double h : {0.2, 0.1, 0.05}) {
      const auto r = spectral::eigs_near_zero(fam.op(h), 4);
      n0.push_back(spectral::projection(r, {0}).operator_norm_estimate);
      n1.push_back(spectral::projection(r, {1}).operator_norm_estimate);
    }
    auto spread = [](const std::vector<double>& v) {
      return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
    };
    o.check(spread(n0) <= 2 && spread(n1) <= 2, fam.name + " norms within 2x");
    o.detail << fam.name << " |Pi_0|=" << fmt(n0[0]) << "," << fmt(n0[1]) << "," << fmt(n0[2]) << " |Pi_1|=" << fmt(n1[0])
             << "," << fmt(n1[1]) << "," << fmt(n1[2]) << "; ";
  }
}

void criterion6(Outcome& o) {
  std::vector<double> times;
  for (int i = 0; i <= 120; ++i) times.push_back(0.25 * i);
  for (const auto& fam : {witten_dw(), kfp_dw_wide()}) {
    std::vector<double> rates;
    for (double h : {0.2, 0.1}) {
      const auto op = fam.op(h);
      const auto r = spectral::eigs_near_zero(op, 4);
      const auto rep = semigroup::equilibration_report(op, r, random_unit(op.size(), 3), times, 0.01);
      rates.push_back(rep.fitted_rate);
      o.check(std::abs(rep.ratio - 1) <= 0.2, fam.name + " h=" + fmt(h) + " rate within 20% of gap");
      const Vec m = disc::discretize_maxwellian(fam.spec, op.grid, h);
      const auto tr = semigroup::evolve(op, m, 10.0, 0.01, {0, 2, 4, 6, 8, 10});
      double drift = 0;
      for (int c = 0; c < tr.states.cols(); ++c) drift = std::max(drift, (tr.states.col(c) - m).norm());
      o.check(drift <= 1e-6, fam.name + " h=" + fmt(h) + " Maxwellian drift");
      o.detail << fam.name << " h=" << fmt(h) << ": rate/gap=" << fmt(rep.ratio) << " drift=" << fmt(drift) << "; ";
    }
    const double var = std::max(rates[0], rates[1]) / std::min(rates[0], rates[1]);
    o.check(var <= 2, fam.name + " rate varies by <= 2x");
  }
}

void criterion7(Outcome& o) {
  const double h = 0.08;
  for (const auto& fam : {witten_dw(), kfp_dw()}) {
    const auto op = fam.op(h);
    const auto r = spectral::eigs_near_zero(op, 4);
    const auto pts = potential::find_critical_points(fam.spec.phase, {fam.lo, fam.hi});
    const auto rep = potential::barrier_report(pts);
    for (int w : rep.minima()) {
      const Vec f = potential::quasimode(fam.spec.phase, pts[w], pts[rep.saddle].value, h, 0.05, op.grid);
      const double ov = spectral::quasimode_overlap(r, f, {0, 1}).value;
      o.check(ov >= 0.99, fam.name + " overlap");
      o.detail << fam.name << " well x=" << fmt(pts[w].location[0]) << ": " << fmt(ov) << "; ";
    }
  }
}

void criterion8(Outcome& o) {
  {
    const double T = 0.5;
    stochastic::EnsembleOptions opt;
    opt.n_traj = 100000;
    opt.t_end = 10;
    opt.dt = 0.0025;
    opt.stride = 4000;
    opt.x0 = Vec::Zero(1);
    const auto e = stochastic::simulate_ensemble(stochastic::make_overdamped(potential::quadratic(), 1.0, T), opt);
    double s1 = 0, s2 = 0, s4 = 0;
    for (int t = 0; t < e.n_traj; ++t) {
      const double x = e.at(t, e.n_snap - 1)[0];
      s1 += x;
      s2 += x * x;
      s4 += x * x * x * x;
    }
    const double n = e.n_traj, var = s2 / n - (s1 / n) * (s1 / n);
    const double se = std::sqrt((s4 / n - (s2 / n) * (s2 / n)) / n);
    o.check(std::abs(var - T) <= 3 * se, "OU variance within 3 se");
    o.detail << "OU var=" << fmt(var) << " se=" << fmt(se) << "; ";
  }
  {
    const double h = 2.0;
    const auto v1 = potential::chain_v1(), v2 = potential::chain_v2(), vc = potential::chain_vc();
    stochastic::EnsembleOptions opt;
    opt.n_traj = 400;
    opt.t_end = 100;
    opt.dt = 0.0004;
    opt.stride = 1250;
    opt.x0 = Vec::Zero(6);
    const auto e = stochastic::simulate_ensemble(stochastic::make_chain(v1, v2, vc, 1.0, h / 2, h / 2), opt);
    stochastic::InvariantOptions io;
    io.bins = 40;
    double worst = 0;
    for (int axis : {0, 1}) {
      io.axes = {axis};
      io.lo = Vec::Constant(1, axis == 0 ? -2.5 : -1.5);
      io.hi = -io.lo;
      worst = std::max(worst, stochastic::invariant_distance(e, susy::assemble_chain(1.0, v1, v2, vc), h, io).tv);
    }
    o.check(worst <= 0.05, "chain TV <= 0.05");
    o.detail << "chain TV=" << fmt(worst) << "; ";
  }
  {
    const auto rep = potential::barrier_report(
        potential::find_critical_points(kDoubleWell, {Vec::Constant(1, -2), Vec::Constant(1, 2)}));
    std::vector<double> xs, ys;
    for (double h : {0.12, 0.15, 0.2, 0.25}) {
      stochastic::EnsembleOptions opt;
      opt.n_traj = 100;
      opt.t_end = 2000;
      opt.dt = 0.005;
      opt.stride = 20;
      opt.x0 = Vec::Constant(1, -1.0);
      const auto e = stochastic::simulate_ensemble(stochastic::make_overdamped(kDoubleWell, 1.0, h / 2), opt);
      const auto st = stochastic::transition_statistics(e, rep, 0.3);
      xs.push_back(1 / h);
      ys.push_back(std::log(st.mean));
    }
    const double slope = spectral::fit_line(xs, ys).slope;
    o.check(std::abs(slope - 0.5) <= 0.15 * 0.5, "transition slope within 15% of 2S");
    o.detail << "transition slope=" << fmt(slope) << " (2S=0.5)";
  }
}

void criterion9(Outcome& o) {
  auto run = [&](const std::string& name, const susy::SusySpec& spec, dyncheck::HypothesisPlan plan) {
    const auto rep = dyncheck::verify_hypotheses(spec, plan);
    double lo = INFINITY, hi = 0;
    for (const auto& n : rep.near_ratios) {
      lo = std::min(lo, n.min_ratio);
      hi = std::max(hi, n.max_ratio);
    }
    o.detail << name << ": pass=" << rep.pass << " points=" << rep.critical_set.size() << " ratios=[" << fmt(lo) << ","
             << fmt(hi) << "] measure_min=" << fmt(rep.measure_min) << "; ";
    return rep;
  };
  dyncheck::HypothesisPlan plan;
  plan.box = {Vec::Constant(1, -2), Vec::Constant(1, 2)};
  o.check(run("witten", susy::assemble_witten(1.0, kDoubleWell), plan).pass, "witten passes");
  plan.box = {Vec::Constant(2, -2), Vec::Constant(2, 2)};
  o.check(run("kfp", susy::assemble_kfp(1.0, kDoubleWell), plan).pass, "kfp passes");
  auto chain = plan;
  chain.box = {Vec::Constant(6, -2), Vec::Constant(6, 2)};
  chain.seeds = 400;
  chain.T0 = 2.0;
  chain.C = 1000;
  const auto cs = susy::assemble_chain(1.0, potential::chain_v1(), potential::chain_v2(), potential::chain_vc());
  o.check(run("chain", cs, chain).pass, "chain passes");
  auto neg = plan;
  neg.box = {Vec::Constant(1, -2), Vec::Constant(1, 2)};
  neg.critical.strict_morse = false;
  const auto q = run("x^4 control", susy::assemble_witten(1.0, potential::polynomial({0, 0, 0, 0, 0.25})), neg);
  o.check(!q.near_pass && !q.pass, "non-Morse control fails the near-ratio check");
}

void criterion10(Outcome& o) {
  struct Case {
    std::string name;
    susy::SusySpec spec;
    disc::Grid grid;
    double h;
  };
  const auto wsea = well_and_sea();
  std::vector<Case> cases{
      {"harmonic witten", susy::assemble_witten(1.0, potential::quadratic()), disc::Grid({{-8, 8, 1601}}), 0.05},
      {"witten dw", witten_dw().spec, witten_dw().grid(0.1), 0.1},
      {"well-and-sea", wsea.spec, wsea.grid(0.1), 0.1},
      {"kfp dw", kfp_dw().spec, disc::Grid({{-2.2, 2.2, 44}, {-2.5, 2.5, 44}}), 0.3},
      {"harmonic kfp", susy::assemble_kfp(1.0, potential::quadratic()), disc::Grid({{-2.5, 2.5, 44}, {-2.5, 2.5, 44}}), 0.3},
  };
  for (const auto& c : cases) {
    o.check(c.grid.node_count() <= 2000, c.name + " grid within 2000 nodes");
    const auto op = disc::discretize(c.spec, c.grid, c.h);
    const auto a = spectral::eigs_near_zero(op, 6);
    const auto b = spectral::dense_spectrum(op, 6);
    const double d = spectral::spectrum_distance(a.eigenvalues, b.eigenvalues);
    o.check(d <= 1e-8, c.name + " distance <= 1e-8");
    o.detail << c.name << " (N=" << c.grid.node_count() << "): " << fmt(d) << "; ";
  }
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7, criterion8,
                                                            criterion9, criterion10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    Stopwatch sw;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[error: " << e.what() << "]";
    }
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " | " << o.detail.str() << " ("
              << fmt(sw.seconds()) << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures;
}
