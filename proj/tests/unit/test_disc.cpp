#include "helpers.hpp"

#include "susylab/disc/discretize.hpp"
#include "susylab/potential/catalog.hpp"
#include "susylab/susy/susy.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace susylab;
using namespace susylab::disc;

namespace {

/// (1 + x_0) exp(-|x|^2) and its jet.
susy::Jet bump(const Vec& x) {
  const int n = static_cast<int>(x.size());
  const double g = std::exp(-x.squaredNorm());
  const double p = 1 + x[0];
  const Vec dp = Vec::Unit(n, 0);
  susy::Jet j;
  j.value = p * g;
  j.grad = g * (dp - 2 * p * x);
  j.hess = g * (-2 * dp * x.transpose() - 2 * x * dp.transpose() + p * (4 * x * x.transpose() - 2 * Mat::Identity(n, n)));
  return j;
}

double consistency_residual(const susy::SusySpec& spec, const Grid& g, double h, double inner) {
  const auto op = discretize(spec, g, h);
  Vec u(op.size());
  for (std::int64_t i = 0; i < op.size(); ++i) u[i] = bump(g.interior_point(i)).value;
  const Vec Pu = apply(op, u);
  double worst = 0.0;
  for (std::int64_t i = 0; i < op.size(); ++i) {
    const Vec x = g.interior_point(i);
    if (x.cwiseAbs().maxCoeff() > inner) continue;
    worst = std::max(worst, std::abs(Pu[i] - susy::apply_continuum(spec, bump(x), x, h)));
  }
  return worst;
}

}  // namespace

TEST_CASE("grid indexing") {
  const Grid g({{-1, 1, 5}, {0, 2, 4}});
  CHECK(g.node_count() == 20);
  CHECK(g.interior_count() == 6);
  CHECK(g.spacing(0) == doctest::Approx(0.5));
  for (std::int64_t n = 0; n < g.node_count(); ++n) CHECK(g.ravel(g.unravel(n)) == n);
  // last axis fastest
  CHECK(g.unravel(1) == std::vector<int>{0, 1});
  for (std::int64_t i = 0; i < g.interior_count(); ++i) CHECK(g.interior_ravel(g.interior_unravel(i)) == i);
  CHECK(g.interior_ravel({0, 1}) == -1);
  const Vec v = Vec::LinSpaced(6, 1, 6);
  CHECK((g.to_interior(g.to_full(v)) - v).norm() == 0.0);
  CHECK_ERROR_KIND(Grid({{0, 1, 2}}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Grid({{1, 0, 5}}), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(Grid({{0, 1, 3000}, {0, 1, 3000}}).check_cap(), ErrorKind::MemoryCap);
}

TEST_CASE("Maxwellian residual of the harmonic Witten operator") {
  const auto spec = susy::assemble_witten(1.0, potential::quadratic());
  const Grid g({{-8, 8, 1601}});
  const auto op = discretize(spec, g, 0.1);
  const Vec m = discretize_maxwellian(spec, g, 0.1);
  CHECK(std::abs(m.norm() - 1.0) <= 1e-14);
  CHECK(apply(op, m).norm() / m.norm() <= 1e-4);
  // equals the normalized discrete Gaussian
  Vec gauss(op.size());
  for (std::int64_t i = 0; i < op.size(); ++i) gauss[i] = std::exp(-std::pow(g.interior_point(i)[0], 2) / 0.2);
  CHECK((m - gauss / gauss.norm()).norm() <= 1e-12);
}

TEST_CASE("Maxwellian residual is small for all three families") {
  const auto V = potential::quartic_double_well(1.0);
  const double h = 0.3;
  {
    const auto s = susy::assemble_witten(1.0, V);
    const Grid g({{-3, 3, 301}});
    CHECK(apply(discretize(s, g, h), discretize_maxwellian(s, g, h)).norm() <= 1e-8);
  }
  {
    const auto s = susy::assemble_kfp(1.0, V);
    const Grid g({{-3, 3, 121}, {-4, 4, 161}});
    CHECK(apply(discretize(s, g, h), discretize_maxwellian(s, g, h)).norm() <= 1e-8);
  }
  {
    const auto s = susy::assemble_chain(1.0, potential::chain_v1(), potential::chain_v2(), potential::chain_vc());
    std::vector<Axis> axes(6, Axis{-1.2, 1.2, 7});
    const Grid g(axes);
    const double hc = 2.0;
    const auto op = discretize(s, g, hc);
    CHECK(max_row_nonzeros(op) <= stencil_bound(6));
    // exact annihilation away from the truncation boundary
    const Vec m = discretize_maxwellian(s, g, hc);
    const Vec r = apply(op, m);
    double inner = 0.0;
    for (std::int64_t i = 0; i < op.size(); ++i) {
      const auto idx = g.interior_unravel(i);
      bool deep = true;
      for (int v : idx) deep = deep && v >= 2 && v <= 4;
      if (deep) inner = std::max(inner, std::abs(r[i]));
    }
    CHECK(inner <= 1e-12);
  }
}

TEST_CASE("second-order consistency") {
  const double h = 0.3;
  const auto w = susy::assemble_witten(1.0, potential::quartic_double_well(1.0));
  const double r1 = consistency_residual(w, Grid::with_spacing(Vec::Constant(1, -3), Vec::Constant(1, 3), 0.04), h, 2);
  const double r2 = consistency_residual(w, Grid::with_spacing(Vec::Constant(1, -3), Vec::Constant(1, 3), 0.02), h, 2);
  CHECK(r1 / r2 >= 3);
  CHECK(r1 / r2 <= 5);

  const auto k = susy::assemble_kfp(1.0, potential::quadratic());
  const double k1 = consistency_residual(k, Grid::with_spacing(Vec::Constant(2, -3), Vec::Constant(2, 3), 0.06), h, 2);
  const double k2 = consistency_residual(k, Grid::with_spacing(Vec::Constant(2, -3), Vec::Constant(2, 3), 0.03), h, 2);
  CHECK(k1 / k2 >= 3);
  CHECK(k1 / k2 <= 5);
}

TEST_CASE("stencil collapse on a three-node grid") {
  const auto spec = susy::assemble_witten(1.0, potential::quadratic());
  const auto op = discretize(spec, Grid({{-0.1, 0.1, 3}}), 0.1);
  REQUIRE(op.size() == 1);
  // b h^2/dx^2 (e^{(phi_0 - phi_1)/h} + e^{(phi_0 - phi_-1)/h}) with b = 1/2
  CHECK(op.matrix.coeff(0, 0) == doctest::Approx(std::exp(-0.05)).epsilon(1e-14));
}

TEST_CASE("stencil bound and errors") {
  const auto k = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  const auto op = discretize(k, Grid({{-2, 2, 41}, {-2, 2, 41}}), 0.2);
  CHECK(max_row_nonzeros(op) <= 9);
  CHECK(stencil_bound(2) == 9);
  CHECK_ERROR_KIND(discretize(k, Grid({{-2, 2, 41}}), 0.2), ErrorKind::DimensionMismatch);
  CHECK_ERROR_KIND(discretize(k, Grid({{-2, 2, 41}, {-2, 2, 41}}), 0.2, {.kappa = 1, .node_cap = 100}),
                   ErrorKind::MemoryCap);
  CHECK_ERROR_KIND(apply(op, Vec::Zero(3)), ErrorKind::LengthMismatch);
}

TEST_CASE("matrix-vector product") {
  const auto w = susy::assemble_witten(1.0, potential::quartic_double_well(1.0));
  const auto op = discretize(w, Grid({{-1, 1, 5}}), 0.4);
  CHECK(apply(op, Vec::Zero(op.size())).norm() == 0.0);
  const Mat dense = Mat(op.matrix.toDense());
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Vec u(op.size()), v(op.size());
  for (auto& x : u) x = nd(rng);
  for (auto& x : v) x = nd(rng);
  CHECK((apply(op, u) - dense * u).norm() <= 1e-14 * (1 + (dense * u).norm()));
  const Vec lhs = apply(op, 2.0 * u - 3.0 * v), rhs = 2.0 * apply(op, u) - 3.0 * apply(op, v);
  CHECK((lhs - rhs).norm() <= 1e-13 * (1 + rhs.norm()));
}

TEST_CASE("double-well Maxwellian has symmetric bumps") {
  const auto w = susy::assemble_witten(1.0, potential::quartic_double_well(1.0));
  const Grid g({{-2.5, 2.5, 1001}});
  const Vec m = discretize_maxwellian(w, g, 0.1);
  double left = 0, right = 0;
  double mid = 0;
  for (std::int64_t i = 0; i < m.size(); ++i) {
    const double x = g.interior_point(i)[0];
    (std::abs(x) < 1e-12 ? mid : x < 0 ? left : right) += m[i] * m[i];
  }
  CHECK(left == doctest::Approx(right).epsilon(1e-10));
  CHECK(left + right + mid == doctest::Approx(1.0));
}

TEST_CASE("assembly is deterministic and exports triplets") {
  const auto k = susy::assemble_kfp(1.0, potential::quartic_double_well(1.0));
  const Grid g({{-2, 2, 21}, {-2, 2, 21}});
  std::ostringstream a, b;
  export_coo(discretize(k, g, 0.3), a);
  export_coo(discretize(k, g, 0.3), b);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  long r, c;
  double v;
  in >> r >> c >> v;
  CHECK(r == 0);
  CHECK(std::isfinite(v));
}
