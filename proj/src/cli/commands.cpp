#include "susylab/cli/commands.hpp"

#include "susylab/disc/discretize.hpp"
#include "susylab/dyncheck/dyncheck.hpp"
#include "susylab/potential/catalog.hpp"
#include "susylab/potential/critical_points.hpp"
#include "susylab/semigroup/evolve.hpp"
#include "susylab/spectral/eigs.hpp"
#include "susylab/spectral/projection.hpp"
#include "susylab/spectral/splitting.hpp"
#include "susylab/stochastic/ensemble_io.hpp"
#include "susylab/stochastic/sde.hpp"
#include "susylab/stochastic/statistics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <random>

namespace susylab::cli {

namespace fs = std::filesystem;

namespace {

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

Vec box_bound(const ExperimentConfig& c, const std::string& section, const std::string& key, int dim) {
  const auto v = c.reals(section, key);
  if (v.size() == 1) return Vec::Constant(dim, v[0]);
  if (static_cast<int>(v.size()) != dim)
    throw Error(ErrorKind::ConfigError, "[" + section + "] " + key + " needs 1 or " + std::to_string(dim) + " values");
  return to_vec(v);
}

potential::Box box_from(const ExperimentConfig& c, const std::string& section, int dim,
                        const std::string& lo = "lo", const std::string& hi = "hi") {
  potential::Box b{box_bound(c, section, lo, dim), box_bound(c, section, hi, dim)};
  require((b.hi - b.lo).minCoeff() > 0, ErrorKind::ConfigError, "[" + section + "] needs hi > lo on every axis");
  return b;
}

disc::Grid grid_from(const ExperimentConfig& c, int dim, double h) {
  const potential::Box b = box_from(c, "grid", dim);
  if (c.has("grid", "n")) {
    require(!c.has("grid", "spacing_over_h"), ErrorKind::ConfigError, "[grid] give either n or spacing_over_h");
    const auto n = c.reals("grid", "n");
    require(n.size() == 1 || static_cast<int>(n.size()) == dim, ErrorKind::ConfigError, "[grid] n has the wrong length");
    std::vector<disc::Axis> axes;
    for (int k = 0; k < dim; ++k) axes.push_back({b.lo[k], b.hi[k], static_cast<int>(n.size() == 1 ? n[0] : n[k])});
    return disc::Grid(axes);
  }
  return disc::Grid::with_spacing(b.lo, b.hi, c.real("grid", "spacing_over_h") * h);
}

disc::DiscretizeOptions disc_options(const ExperimentConfig& c) {
  disc::DiscretizeOptions o;
  o.kappa = c.real("grid", "kappa", o.kappa);
  o.node_cap = c.integer("grid", "node_cap", static_cast<long>(o.node_cap));
  return o;
}

spectral::EigsOptions eigs_options(const ExperimentConfig& c) {
  spectral::EigsOptions o;
  o.shift_factor = c.real("solver", "shift_factor", o.shift_factor);
  o.seed = c.u64("solver", "seed", o.seed);
  o.left = c.flag("solver", "left", o.left);
  return o;
}

std::vector<int> index_list(const ExperimentConfig& c, const std::string& section, const std::string& key,
                            std::vector<int> fallback) {
  if (!c.has(section, key)) return fallback;
  std::vector<int> out;
  for (double v : c.reals(section, key)) out.push_back(static_cast<int>(v));
  return out;
}

void write_json(const fs::path& path, const Json& j, CommandResult& res) {
  atomic_write(path, j.dump(2) + "\n");
  res.files.push_back(path.filename().string());
}

void write_text(const fs::path& path, const std::string& text, CommandResult& res) {
  atomic_write(path, text);
  res.files.push_back(path.filename().string());
}

Json spectrum_json(const spectral::SpectralResult& r) {
  Json a = Json::array();
  for (int i = 0; i < r.size(); ++i)
    a.push_back({{"index", i},
                 {"value", complex_json(r.eigenvalues[i])},
                 {"residual", r.residuals[i]},
                 {"left_residual", i < static_cast<int>(r.left_residuals.size()) ? r.left_residuals[i] : 0.0}});
  return a;
}

Json point_json(const potential::CriticalPoint& p) {
  return {{"location", vec_json(p.location)}, {"value", p.value}, {"index", p.index}, {"hessian_eigenvalues", vec_json(p.hess_eigs)}};
}

Json report_json(const potential::CriticalPointReport& rep) {
  Json pts = Json::array();
  for (const auto& p : rep.points) pts.push_back(point_json(p));
  Json bars = Json::array();
  for (const auto& [i, s] : rep.barriers) bars.push_back({{"point", i}, {"barrier", s}});
  return {{"points", pts},
          {"barriers", bars},
          {"saddle", rep.saddle},
          {"double_well", rep.is_double_well},
          {"well_and_sea", rep.is_well_and_sea},
          {"supported", rep.supported},
          {"topology_note", rep.topology_note}};
}

potential::CriticalSearchOptions search_options(const ExperimentConfig& c) {
  potential::CriticalSearchOptions o;
  o.seeds_per_axis = static_cast<int>(c.integer("analysis", "seeds_per_axis", o.seeds_per_axis));
  o.newton_tol = c.real("analysis", "newton_tol", o.newton_tol);
  o.morse_tol = c.real("analysis", "morse_tol", o.morse_tol);
  o.max_iter = static_cast<int>(c.integer("analysis", "max_iter", o.max_iter));
  o.strict_morse = c.flag("analysis", "strict_morse", o.strict_morse);
  return o;
}

/// Barrier of the effective potential inside the first coordinates of the grid box.
double barrier_from_grid_box(const susy::SusySpec& spec, const ExperimentConfig& c) {
  const int n = spec.effective.dimension();
  const potential::Box full = box_from(c, "grid", spec.dim);
  const potential::Box box{full.lo.head(n), full.hi.head(n)};
  potential::CriticalSearchOptions o;
  o.seeds_per_axis = n <= 2 ? 20 : 8;
  const auto rep = potential::barrier_report(potential::find_critical_points(spec.effective, box, o));
  if (!rep.supported || rep.barriers.empty())
    throw Error(ErrorKind::UnsupportedTopology, "cannot infer a barrier: " + rep.topology_note);
  return rep.effective_barrier();
}

}  // namespace

susy::SusySpec build_spec(const ExperimentConfig& c) {
  const std::string family = c.str("model", "family");
  const double gamma = c.real("model", "gamma", 1.0);
  switch (susy::family_from_string(family)) {
    case susy::Family::Witten:
      return susy::assemble_witten(gamma, potential::from_catalog(c.str("model", "potential")));
    case susy::Family::Kfp:
      return susy::assemble_kfp(gamma, potential::from_catalog(c.str("model", "potential")));
    case susy::Family::Chain:
      return susy::assemble_chain(gamma, potential::from_catalog(c.str("model", "v1", "chain_v1")),
                                  potential::from_catalog(c.str("model", "v2", "chain_v2")),
                                  potential::from_catalog(c.str("model", "vc", "chain_vc")));
    case susy::Family::Custom:
      break;
  }
  throw Error(ErrorKind::ConfigError, "[model] family must be witten, kfp or chain");
}

CommandResult cmd_analyze_potential(const ExperimentConfig& c, const fs::path& out) {
  const auto spec = build_spec(c);
  const potential::Box box = box_from(c, "analysis", spec.effective.dimension());
  const auto rep = potential::barrier_report(potential::find_critical_points(spec.effective, box, search_options(c)));
  CommandResult res;
  Json j{{"config_hash", c.hash()}, {"field", spec.effective.name()}};
  j["report"] = report_json(rep);
  if (rep.supported && !rep.barriers.empty()) j["effective_barrier"] = rep.effective_barrier();
  write_json(out / "critical_points.json", j, res);
  res.summary = {{"points", rep.points.size()}, {"supported", rep.supported}};
  return res;
}

CommandResult cmd_spectrum(const ExperimentConfig& c, const fs::path& out) {
  const auto spec = build_spec(c);
  const double h = c.real("solver", "h");
  const auto op = disc::discretize(spec, grid_from(c, spec.dim, h), h, disc_options(c));
  const int k = static_cast<int>(c.integer("solver", "k", 4));
  const auto r = spectral::eigs_near_zero(op, k, c.real("solver", "tol", 1e-8),
                                          static_cast<int>(c.integer("solver", "max_iter", 3000)), eigs_options(c));
  CommandResult res;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < r.size(); ++i)
    rows.push_back({h, r.eigenvalues[i].real(), r.eigenvalues[i].imag(), r.residuals[i], double(i),
                    i < static_cast<int>(r.left_residuals.size()) ? r.left_residuals[i] : 0.0});
  write_text(out / "spectrum.csv",
             csv_table({"h", "re_mu", "im_mu", "residual", "index", "left_residual"}, rows, c.hash()), res);

  const double radius = c.real("solver", "disc_radius", 0.1) * h;
  Json j{{"config_hash", c.hash()}, {"h", h}, {"unknowns", op.size()}, {"shift", r.shift}};
  j["eigenvalues"] = spectrum_json(r);
  std::vector<int> meta;
  try {
    const auto dc = spectral::count_in_disc(r, radius);
    j["disc"] = {{"radius", dc.radius}, {"count", dc.count}, {"gap_margin", dc.gap_margin}};
    for (int i = 0; i < dc.count; ++i) meta.push_back(i);
  } catch (const Error& e) {
    j["disc"] = {{"radius", radius}, {"error", to_string(e.kind())}};
  }
  Json ladder = Json::array();
  for (double f : {0.25, 0.1, 0.025}) {
    try {
      const auto dc = spectral::count_in_disc(r, f * h);
      ladder.push_back({{"radius", dc.radius}, {"count", dc.count}, {"gap_margin", dc.gap_margin}});
    } catch (const Error& e) {
      ladder.push_back({{"radius", f * h}, {"error", to_string(e.kind())}});
    }
  }
  j["disc_ladder"] = ladder;
  meta = index_list(c, "solver", "metastable", meta);
  if (r.left.cols() > 0) {
    j["biorthogonality_defect"] = r.biorthogonality_defect();
    Json projs = Json::array();
    for (int i : meta) {
      const auto p = spectral::projection(r, {i});
      projs.push_back({{"indices", {i}}, {"norm", p.operator_norm_estimate}});
    }
    if (!meta.empty()) {
      const auto p = spectral::projection(r, meta);
      projs.push_back({{"indices", meta}, {"norm", p.operator_norm_estimate}});
    }
    j["projectors"] = projs;
  }
  write_json(out / "projection.json", j, res);
  res.summary = {{"eigenvalues", r.size()}};
  return res;
}

CommandResult cmd_splitting(const ExperimentConfig& c, const fs::path& out) {
  spectral::SplittingProblem pb;
  pb.spec = build_spec(c);
  require(c.has("grid", "spacing_over_h") && !c.has("grid", "n"), ErrorKind::ConfigError,
          "[grid] splitting sweeps need spacing_over_h");
  const potential::Box b = box_from(c, "grid", pb.spec.dim);
  pb.policy.lo = b.lo;
  pb.policy.hi = b.hi;
  pb.policy.spacing_over_h = c.real("grid", "spacing_over_h");
  pb.disc = disc_options(c);
  pb.barrier = c.has("sweep", "barrier") ? c.real("sweep", "barrier") : barrier_from_grid_box(pb.spec, c);
  pb.index = static_cast<int>(c.integer("sweep", "index", 1));
  pb.k = static_cast<int>(c.integer("solver", "k", 4));
  pb.tol = c.real("solver", "tol", pb.tol);
  pb.max_iter = static_cast<int>(c.integer("solver", "max_iter", pb.max_iter));
  pb.eigs = eigs_options(c);
  const auto fit = spectral::splitting_sweep(pb, c.reals("sweep", "h"));

  CommandResult res;
  std::vector<std::vector<double>> rows;
  Json samples = Json::array();
  for (std::size_t i = 0; i < fit.samples.size(); ++i) {
    const auto& s = fit.samples[i];
    rows.push_back({s.h, s.mu.real(), s.mu.imag(), s.mu0.real(), s.mu0.imag(), s.next.real(), s.next.imag(),
                    s.residual, double(s.unknowns), fit.prefactors[i]});
    samples.push_back({{"h", s.h}, {"mu", complex_json(s.mu)}, {"mu0", complex_json(s.mu0)}, {"next", complex_json(s.next)},
                       {"residual", s.residual}, {"unknowns", s.unknowns}, {"prefactor", fit.prefactors[i]}});
  }
  write_text(out / "splitting.csv",
             csv_table({"h", "mu_re", "mu_im", "mu0_re", "mu0_im", "next_re", "next_im", "residual", "unknowns", "prefactor"},
                       rows, c.hash()),
             res);
  Json j{{"config_hash", c.hash()},
         {"barrier", fit.barrier},
         {"expected_slope", -2 * fit.barrier},
         {"slope", fit.slope},
         {"intercept", fit.intercept},
         {"r_squared", fit.r_squared},
         {"samples", samples}};
  write_json(out / "splitting.json", j, res);
  res.summary = {{"slope", fit.slope}, {"r_squared", fit.r_squared}};
  return res;
}

CommandResult cmd_evolve(const ExperimentConfig& c, const fs::path& out) {
  const auto spec = build_spec(c);
  const double h = c.real("solver", "h");
  const auto op = disc::discretize(spec, grid_from(c, spec.dim, h), h, disc_options(c));
  const auto meta = index_list(c, "solver", "metastable", {0, 1});
  const int k = static_cast<int>(c.integer("solver", "k", static_cast<long>(meta.size()) + 2));
  const auto r = spectral::eigs_near_zero(op, k, c.real("solver", "tol", 1e-8),
                                          static_cast<int>(c.integer("solver", "max_iter", 3000)), eigs_options(c));
  const double t_end = c.real("evolution", "t_end");
  const double dt = c.real("evolution", "dt");
  const int samples = static_cast<int>(c.integer("evolution", "samples", 101));
  require(samples >= 2 && t_end > 0, ErrorKind::ConfigError, "[evolution] needs t_end > 0 and samples >= 2");
  std::vector<double> times;
  for (int i = 0; i < samples; ++i) times.push_back(t_end * i / (samples - 1));
  semigroup::EvolveOptions eo;
  eo.startup_steps = static_cast<int>(c.integer("evolution", "startup_steps", 0));

  const std::string initial = c.str("evolution", "initial", "random");
  Vec u0(op.size());
  if (initial == "random") {
    stochastic::StreamRng rng(c.u64("evolution", "seed", 42), 0);
    std::normal_distribution<double> normal;
    for (auto& v : u0) v = normal(rng);
    u0 /= u0.norm();
  } else if (initial == "maxwellian") {
    u0 = disc::discretize_maxwellian(spec, op.grid, h);
  } else {
    throw Error(ErrorKind::ConfigError, "[evolution] initial must be random or maxwellian");
  }
  const auto rep = semigroup::equilibration_report(op, r, u0, times, dt, meta, eo);

  const Vec m = disc::discretize_maxwellian(spec, op.grid, h);
  const auto tm = semigroup::evolve(op, m, t_end, dt, times, eo);
  double drift = 0.0;
  for (Eigen::Index j = 0; j < tm.states.cols(); ++j) drift = std::max(drift, (tm.states.col(j) - m).norm());

  CommandResult res;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.times.size(); ++i)
    rows.push_back({rep.times[i], rep.remainder_norms[i], rep.state_norms[i]});
  write_text(out / "evolution.csv", csv_table({"t", "remainder_norm", "state_norm"}, rows, c.hash()), res);
  Json j{{"config_hash", c.hash()},
         {"h", h},
         {"unknowns", op.size()},
         {"metastable", meta},
         {"eigenvalues", spectrum_json(r)},
         {"fitted_rate", rep.fitted_rate},
         {"gap", rep.gap},
         {"ratio", rep.ratio},
         {"window_points", rep.window_points},
         {"monotone", rep.monotone},
         {"dt", rep.dt_used},
         {"maxwellian_drift", drift}};
  write_json(out / "evolution.json", j, res);
  res.summary = {{"fitted_rate", rep.fitted_rate}, {"gap", rep.gap}};
  return res;
}

CommandResult cmd_sde(const ExperimentConfig& c, const fs::path& out) {
  const auto spec = build_spec(c);
  const double gamma = c.real("model", "gamma", 1.0);
  std::string kind = c.str("sde", "model", "");
  if (kind.empty()) {
    static const std::map<susy::Family, std::string> dflt{
        {susy::Family::Witten, "overdamped"}, {susy::Family::Kfp, "kinetic"}, {susy::Family::Chain, "chain"}};
    kind = dflt.at(spec.family);
  }
  // temperatures: explicit, or T = h/2 from the semiclassical parameter
  const bool have_h = c.has("sde", "h");
  const double T = c.has("model", "temperature") ? c.real("model", "temperature")
                   : have_h                       ? c.real("sde", "h") / 2
                                                  : throw Error(ErrorKind::ConfigError, "need [model] temperature or [sde] h");
  stochastic::SdeModel model;
  if (kind == "overdamped" && spec.family == susy::Family::Witten) {
    model = stochastic::make_overdamped(potential::from_catalog(c.str("model", "potential")), gamma, T);
  } else if (kind == "kinetic" && spec.family == susy::Family::Kfp) {
    model = stochastic::make_kinetic(potential::from_catalog(c.str("model", "potential")), gamma, T);
  } else if (kind == "chain" && spec.family == susy::Family::Chain) {
    model = stochastic::make_chain(potential::from_catalog(c.str("model", "v1", "chain_v1")),
                                   potential::from_catalog(c.str("model", "v2", "chain_v2")),
                                   potential::from_catalog(c.str("model", "vc", "chain_vc")), gamma,
                                   c.real("model", "t1", T), c.real("model", "t2", T));
  } else {
    throw Error(ErrorKind::ConfigError, "[sde] model '" + kind + "' does not match [model] family");
  }

  stochastic::EnsembleOptions eo;
  eo.n_traj = static_cast<int>(c.integer("sde", "n_traj"));
  eo.dt = c.real("sde", "dt");
  eo.t_end = c.real("sde", "t_end");
  eo.seed = c.u64("sde", "seed", 42);
  eo.stride = static_cast<int>(c.integer("sde", "stride", 100));
  eo.x0 = c.has("sde", "x0") ? box_bound(c, "sde", "x0", model.dim) : Vec(Vec::Zero(model.dim));
  if (c.has("sde", "lipschitz_lo")) {
    eo.lip_lo = box_bound(c, "sde", "lipschitz_lo", model.dim);
    eo.lip_hi = box_bound(c, "sde", "lipschitz_hi", model.dim);
  }
  // resolve the wells before simulating
  std::optional<potential::CriticalPointReport> wells;
  if (c.has("sde", "radius")) {
    const potential::Box box = box_from(c, "sde", spec.effective.dimension(), "wells_lo", "wells_hi");
    wells = potential::barrier_report(potential::find_critical_points(spec.effective, box));
  }
  auto ens = stochastic::simulate_ensemble(model, eo);
  ens.config_hash = c.hash();

  CommandResult res;
  const fs::path bin = out / "ensemble.bin";
  fs::path tmp = bin;
  tmp += ".tmp";
  stochastic::write_ensemble(tmp.string(), ens);
  fs::rename(tmp, bin);
  res.files.push_back("ensemble.bin");
  write_text(out / "ensemble.json", stochastic::ensemble_sidecar(ens, "ensemble.bin", c.hash()) + "\n", res);

  Json j{{"config_hash", c.hash()}, {"model_id", model.id}, {"temperature", T}};
  if (c.has("sde", "bins")) {
    require(model.T1 == model.T2, ErrorKind::ConfigError, "invariant check needs equal temperatures");
    stochastic::InvariantOptions io;
    io.axes = index_list(c, "sde", "axes", {0});
    io.bins = static_cast<int>(c.integer("sde", "bins"));
    io.burn_in = c.real("sde", "burn_in", io.burn_in);
    const int na = static_cast<int>(io.axes.size());
    // without a range the histogram spans the samples
    if (c.has("sde", "lo") || c.has("sde", "hi")) {
      io.lo = box_bound(c, "sde", "lo", na);
      io.hi = box_bound(c, "sde", "hi", na);
    }
    const auto inv = stochastic::invariant_distance(ens, spec, 2 * T, io);
    j["invariant"] = {{"tv", inv.tv}, {"samples", inv.samples}, {"bins", inv.total_bins}, {"axes", io.axes}};
    std::vector<std::vector<double>> rows;
    for (int b = 0; b < inv.total_bins; ++b) rows.push_back({double(b), inv.empirical[b], inv.exact[b]});
    write_text(out / "histogram.csv", csv_table({"bin", "empirical", "exact"}, rows, c.hash()), res);
  }
  if (wells) {
    const auto st = stochastic::transition_statistics(ens, *wells, c.real("sde", "radius"),
                                                      static_cast<int>(c.integer("sde", "min_transitions", 30)));
    j["transitions"] = {{"radius", st.radius},     {"mean", st.mean},
                        {"se", st.se},             {"count", st.count},
                        {"forward_mean", st.forward_mean}, {"forward_se", st.forward_se},
                        {"forward_count", st.forward_count}, {"backward_mean", st.backward_mean},
                        {"backward_se", st.backward_se},   {"backward_count", st.backward_count}};
  }
  write_json(out / "sde_stats.json", j, res);
  res.summary = {{"trajectories", ens.n_traj}, {"snapshots", ens.n_snap}};
  return res;
}

CommandResult cmd_check_hypotheses(const ExperimentConfig& c, const fs::path& out) {
  const auto spec = build_spec(c);
  dyncheck::HypothesisPlan p;
  p.box = box_from(c, "dyncheck", spec.dim);
  p.seeds = static_cast<int>(c.integer("dyncheck", "seeds", p.seeds));
  p.T0 = c.real("dyncheck", "t0", p.T0);
  p.radii = c.reals("dyncheck", "radii", p.radii);
  p.directions = static_cast<int>(c.integer("dyncheck", "directions", p.directions));
  p.C = c.real("dyncheck", "c", p.C);
  p.far_samples = static_cast<int>(c.integer("dyncheck", "far_samples", p.far_samples));
  p.xi_max = c.real("dyncheck", "xi_max", p.xi_max);
  p.far_exclusion = c.real("dyncheck", "far_exclusion", p.far_exclusion);
  p.far_floor = c.real("dyncheck", "far_floor", p.far_floor);
  p.measure_points = static_cast<int>(c.integer("dyncheck", "measure_points", p.measure_points));
  p.measure_exclusion = c.real("dyncheck", "measure_exclusion", p.measure_exclusion);
  p.measure_threshold = c.real("dyncheck", "measure_threshold", p.measure_threshold);
  p.measure_floor = c.real("dyncheck", "measure_floor", p.measure_floor);
  p.measure_time_samples = static_cast<int>(c.integer("dyncheck", "measure_time_samples", p.measure_time_samples));
  p.seed = c.u64("dyncheck", "seed", p.seed);
  p.critical.strict_morse = c.flag("dyncheck", "strict_morse", true);
  const auto rep = dyncheck::verify_hypotheses(spec, p);

  CommandResult res;
  Json cs = Json::array();
  for (std::size_t i = 0; i < rep.critical_set.size(); ++i)
    cs.push_back({{"x", vec_json(rep.critical_set[i].x)}, {"index", rep.indices[i]}});
  Json near = Json::array();
  for (const auto& n : rep.near_ratios)
    near.push_back({{"point", n.point}, {"radius", n.radius}, {"min_ratio", n.min_ratio}, {"max_ratio", n.max_ratio}});
  Json meas = Json::array();
  for (const auto& m : rep.measure_fractions) meas.push_back({{"x0", vec_json(m.x0)}, {"fraction", m.fraction}});
  auto finite = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  Json j{{"config_hash", c.hash()},
         {"pass", rep.pass},
         {"critical_ok", rep.critical_ok},
         {"near_pass", rep.near_pass},
         {"far_pass", rep.far_pass},
         {"measure_pass", rep.measure_pass},
         {"thresholds",
          {{"C", rep.C}, {"far_floor", rep.far_floor}, {"measure_threshold", rep.measure_threshold},
           {"measure_floor", rep.measure_floor}, {"T0", rep.T0}}},
         {"critical_set", cs},
         {"near_ratios", near},
         {"far_min", finite(rep.far_min)},
         {"measure_min", finite(rep.measure_min)},
         {"measure_fractions", meas},
         {"note", rep.note}};
  write_json(out / "hypotheses.json", j, res);
  res.summary = {{"pass", rep.pass}};
  return res;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ConfigError:
    case ErrorKind::IoError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::LengthMismatch:
    case ErrorKind::MemoryCap:
    case ErrorKind::UnsupportedTopology:
    case ErrorKind::BadTopology:
      return 2;
    default:
      return 3;
  }
}

int run(const RunOptions& o) {
  const fs::path out = o.out_dir.empty() ? fs::path("out") : fs::path(o.out_dir);
  std::string hash = "";
  auto fail = [&](ErrorKind kind, const std::string& what) {
    const int code = exit_code_for(kind);
    Json j{{"config_hash", hash}, {"command", o.command}, {"error", to_string(kind)}, {"message", what}, {"exit_code", code}};
    std::cerr << j.dump() << "\n";
    try {
      fs::create_directories(out);
      atomic_write(out / "error.json", j.dump(2) + "\n");
    } catch (...) {
    }
    return code;
  };
  try {
    ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig() : ExperimentConfig::load(o.config_path);
    if (o.seed) cfg.override_seed(*o.seed);
    hash = cfg.hash();
    validate(cfg, o.command);
    if (o.threads > 0) omp_set_num_threads(o.threads);
    fs::create_directories(out);
    CommandResult res;
    if (o.command == "analyze-potential") res = cmd_analyze_potential(cfg, out);
    else if (o.command == "spectrum") res = cmd_spectrum(cfg, out);
    else if (o.command == "splitting") res = cmd_splitting(cfg, out);
    else if (o.command == "evolve") res = cmd_evolve(cfg, out);
    else if (o.command == "sde") res = cmd_sde(cfg, out);
    else if (o.command == "check-hypotheses") res = cmd_check_hypotheses(cfg, out);
    Json meta{{"config_hash", hash},
              {"command", o.command},
              {"timestamp", utc_timestamp()},
              {"threads", omp_get_max_threads()},
              {"files", res.files},
              {"summary", res.summary}};
    atomic_write(out / "metadata.json", meta.dump(2) + "\n");
    fs::remove(out / "error.json");
    std::cout << res.summary.dump() << "\n";
    return 0;
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(ErrorKind::IoError, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ErrorKind::MemoryCap, "allocation failed");
  }
}

}  // namespace susylab::cli
