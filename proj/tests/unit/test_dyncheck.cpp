#include "helpers.hpp"

#include "susylab/dyncheck/dyncheck.hpp"
#include "susylab/potential/catalog.hpp"

#include <cmath>

using namespace susylab;
using namespace susylab::dyncheck;

namespace {

const potential::Box box2{Vec::Constant(2, -2), Vec::Constant(2, 2)};

double p1(const susy::SusySpec& s, const PhasePoint& r) { return susy::transport_field(s, r.x).dot(r.xi); }

PhasePoint pp(std::initializer_list<double> x, std::initializer_list<double> xi) {
  PhasePoint r;
  r.x = Eigen::Map<const Vec>(x.begin(), static_cast<Eigen::Index>(x.size()));
  r.xi = Eigen::Map<const Vec>(xi.begin(), static_cast<Eigen::Index>(xi.size()));
  return r;
}

}  // namespace

TEST_CASE("seed generators") {
  const auto l = lattice_seeds(box2, 5);
  CHECK(l.size() == 25);
  const auto a = random_seeds(box2, 50, 3), b = random_seeds(box2, 50, 3);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(box2.contains(a[i]));
  }
}

TEST_CASE("kinetic double-well critical set") {
  const auto s = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  const auto cs = critical_set(s, box2, lattice_seeds(box2, 9));
  REQUIRE(cs.size() == 3);
  // wells first, then the saddle
  CHECK(std::abs(std::abs(cs[0].x[0]) - 1) <= 1e-8);
  CHECK(std::abs(std::abs(cs[1].x[0]) - 1) <= 1e-8);
  CHECK(std::abs(cs[2].x[0]) <= 1e-8);
  for (const auto& r : cs) {
    CHECK(std::abs(r.x[1]) <= 1e-8);
    CHECK(r.xi.norm() == 0.0);
  }
}

TEST_CASE("chain critical set matches the effective potential") {
  const auto s = susy::assemble_chain(1.0, potential::chain_v1(), potential::chain_v2(), potential::chain_vc());
  const potential::Box box6{Vec::Constant(6, -2), Vec::Constant(6, 2)};
  const auto cs = critical_set(s, box6, random_seeds(box6, 400));
  const auto eff = potential::find_critical_points(s.effective, {Vec::Constant(2, -2), Vec::Constant(2, 2)});
  REQUIRE(cs.size() == eff.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    CHECK((cs[i].x.head(2) - eff[i].location).norm() <= 1e-7);
    CHECK(cs[i].x.segment(2, 2).norm() <= 1e-7);
    CHECK((cs[i].x.tail(2) - eff[i].location).norm() <= 1e-7);
  }
}

TEST_CASE("critical set failures") {
  const auto flat = susy::assemble_kfp(1.0, potential::polynomial({0, 1}));
  CHECK_ERROR_KIND(critical_set(flat, box2, lattice_seeds(box2, 5)), ErrorKind::NoConvergence);
  const auto quartic = susy::assemble_witten(1.0, potential::polynomial({0, 0, 0, 0, 0.25}));
  const potential::Box b1{Vec::Constant(1, -1), Vec::Constant(1, 1)};
  CHECK_ERROR_KIND(critical_set(quartic, b1, lattice_seeds(b1, 11)), ErrorKind::NonMorse);
  const auto loose = critical_set(quartic, b1, lattice_seeds(b1, 11), {.strict_morse = false});
  CHECK(loose.size() == 1);
}

TEST_CASE("Hamilton flow of p1") {
  const auto s = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  const auto r = pp({0.5, 0.3}, {1.0, -2.0});
  const auto same = hp1_flow(s, r, 0.0, 1e-3);
  CHECK(same.x == r.x);
  CHECK(same.xi == r.xi);
  const auto moved = hp1_flow(s, r, 1.0, 1e-3);
  CHECK(std::abs(p1(s, moved) - p1(s, r)) <= 1e-8 * std::abs(p1(s, r)));
  const auto back = hp1_flow(s, moved, -1.0, 1e-3);
  CHECK((back.x - r.x).norm() <= 1e-9);
  CHECK((back.xi - r.xi).norm() <= 1e-9);
  CHECK_ERROR_KIND(hp1_flow(s, pp({1.9, 1.9}, {3.0, 3.0}), 1.0, 0.9), ErrorKind::StepTooLarge);
}

TEST_CASE("harmonic kinetic flow is a rotation") {
  const auto s = susy::assemble_kfp(1.0, potential::quadratic());
  const auto r = pp({0.7, -0.2}, {0.4, 1.1});
  const double t = 1.3;
  Mat E(2, 2);
  E << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  const auto f = hp1_flow(s, r, t, 1e-3);
  CHECK((f.x - E * r.x).norm() <= 1e-10);
  CHECK((f.xi - E * r.xi).norm() <= 1e-10);
}

TEST_CASE("time averages") {
  const auto k = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  CHECK(time_average(k, pp({1, 0}, {0, 0}), 1.0) <= 1e-10);
  CHECK(time_average(k, pp({0.5, 0}, {0, 0}), 1.0) > 1e-4);
  // the average is positive even where p~ itself vanishes
  CHECK(p_tilde(k, pp({0.5, 0}, {0, 0})) == doctest::Approx(0.0));
  const auto w = susy::assemble_witten(1.0, potential::quartic_double_well(1.0));
  const auto r = pp({0.4}, {0.7});
  CHECK(time_average(w, r, 2.0) == doctest::Approx(p_tilde(w, r)).epsilon(1e-12));
  // p~ = p0 + p2 / <xi>^2 for the Witten symbol with B = I/2
  const double v = 0.4 * (0.16 - 1);
  CHECK(p_tilde(w, r) == doctest::Approx(0.5 * v * v + 0.5 * 0.49 / 1.49));
}

TEST_CASE("transport flow measure") {
  const auto w = susy::assemble_witten(1.0, potential::quartic_double_well(1.0));
  CHECK(nu_flow_measure(w, Vec::Constant(1, 0.5), 1.0, 1e-3, 128) == 1.0);
  CHECK(nu_flow_measure(w, Vec::Constant(1, 1.0), 1.0, 1e-3, 128) == 0.0);
  const auto k = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  // y(t) ~ 0.375 t, so p0 = y^2/2 stays below 1e-3 for |t| < 0.12
  const double f = nu_flow_measure(k, 0.5 * Vec::Unit(2, 0), 1.0, 1e-3, 256);
  CHECK(f >= 0.72);
  CHECK(f <= 0.8);
  CHECK(nu_flow_measure(k, Vec::Unit(2, 0), 1.0, 1e-3, 64) == 0.0);
  const auto inv = susy::assemble_kfp(1.0, potential::polynomial({0, 0, 0, 0, -1}));
  CHECK_ERROR_KIND(nu_flow_measure(inv, Vec::Constant(2, 3.0), 20.0, 1e-3, 64), ErrorKind::FlowBlowup);
}

TEST_CASE("hypothesis report for the kinetic double well") {
  HypothesisPlan plan;
  plan.box = box2;
  plan.seeds = 100;
  plan.far_samples = 64;
  plan.measure_points = 16;
  plan.directions = 16;
  const auto rep = verify_hypotheses(susy::assemble_kfp(1.0, potential::quartic_double_well(1.0)), plan);
  CHECK(rep.critical_ok);
  CHECK(rep.critical_set.size() == 3);
  CHECK(rep.near_ratios.size() == 9);
  CHECK(rep.near_pass);
  CHECK(rep.far_pass);
  CHECK(rep.measure_pass);
  CHECK(rep.pass);
}

TEST_CASE("degenerate well fails the near-set check") {
  HypothesisPlan plan;
  plan.box = {Vec::Constant(1, -1), Vec::Constant(1, 1)};
  plan.critical.strict_morse = false;
  plan.seeds = 20;
  plan.far_samples = 32;
  plan.measure_points = 8;
  plan.directions = 8;
  const auto rep = verify_hypotheses(susy::assemble_witten(1.0, potential::polynomial({0, 0, 0, 0, 0.25})), plan);
  CHECK_FALSE(rep.near_pass);
  CHECK_FALSE(rep.pass);

  HypothesisPlan none = plan;
  const auto flat = verify_hypotheses(susy::assemble_witten(1.0, potential::polynomial({0, 1})), none);
  CHECK_FALSE(flat.critical_ok);
  CHECK_FALSE(flat.pass);
  CHECK(!flat.note.empty());
}
