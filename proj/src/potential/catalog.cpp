#include "susylab/potential/catalog.hpp"

#include <boost/algorithm/string.hpp>

#include <cmath>
#include <sstream>

namespace susylab::potential {

namespace {

ScalarField one_dim(std::function<double(double)> f, std::function<double(double)> df,
                    std::function<double(double)> d2f, std::string name) {
  return ScalarField(
      1, [f](const Vec& x) { return f(x[0]); },
      [df](const Vec& x) { return Vec::Constant(1, df(x[0])); },
      [d2f](const Vec& x) { return Mat::Constant(1, 1, d2f(x[0])); }, std::move(name),
      "derivatives of order >= 2 bounded: asserted by user");
}

}  // namespace

ScalarField quadratic(int dim, double omega) {
  require(dim >= 1, ErrorKind::InvalidArgument, "quadratic needs dim >= 1");
  return ScalarField(
      dim, [omega](const Vec& x) { return 0.5 * omega * x.squaredNorm(); },
      [omega](const Vec& x) { return Vec(omega * x); },
      [omega, dim](const Vec&) { return Mat(omega * Mat::Identity(dim, dim)); }, "quadratic",
      "quadratic: all derivatives of order >= 2 constant");
}

ScalarField quartic_double_well(double a) {
  const double a2 = a * a;
  return one_dim([a2](double x) { return 0.25 * (x * x - a2) * (x * x - a2); },
                 [a2](double x) { return x * (x * x - a2); },
                 [a2](double x) { return 3 * x * x - a2; }, "quartic_double_well");
}

ScalarField polynomial(std::vector<double> c) {
  require(!c.empty(), ErrorKind::InvalidArgument, "polynomial needs coefficients");
  auto horner = [](const std::vector<double>& k, double x) {
    double acc = 0.0;
    for (auto it = k.rbegin(); it != k.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  std::vector<double> d1, d2;
  for (std::size_t i = 1; i < c.size(); ++i) d1.push_back(static_cast<double>(i) * c[i]);
  for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(static_cast<double>(i) * d1[i]);
  if (d1.empty()) d1.push_back(0.0);
  if (d2.empty()) d2.push_back(0.0);
  return one_dim([c, horner](double x) { return horner(c, x); },
                 [d1, horner](double x) { return horner(d1, x); },
                 [d2, horner](double x) { return horner(d2, x); }, "polynomial");
}

ScalarField well_and_sea() {
  ScalarField f = polynomial({0.0, -0.5625, 0.0, 1.0 / 3.0});
  return ScalarField(
      1, [f](const Vec& x) { return f.eval(x); }, [f](const Vec& x) { return f.grad(x); },
      [f](const Vec& x) { return f.hess(x); }, "well_and_sea",
      "cubic: unbounded third derivative is constant, so the condition holds");
}

ScalarField chain_v1() {
  return one_dim(
      [](double x) {
        const double u = x * x - 1;
        return 0.5 * x * x + 5 * std::sqrt(u * u + 1);
      },
      [](double x) {
        const double u = x * x - 1;
        return x + 10 * x * u / std::sqrt(u * u + 1);
      },
      [](double x) {
        const double u = x * x - 1;
        const double r = std::sqrt(u * u + 1);
        // d/dx [x u / r] = (u + 2x^2)/r - 2 x^2 u^2 / r^3
        return 1 + 10 * ((u + 2 * x * x) / r - 2 * x * x * u * u / (r * r * r));
      },
      "chain_v1");
}

ScalarField chain_v2() {
  return one_dim([](double x) { return 5 * x * x; }, [](double x) { return 10 * x; },
                 [](double) { return 10.0; }, "chain_v2");
}

ScalarField chain_vc() {
  return one_dim([](double x) { return 0.1 * std::cos(x); },
                 [](double x) { return -0.1 * std::sin(x); },
                 [](double x) { return -0.1 * std::cos(x); }, "chain_vc");
}

ScalarField chain_potential(const ScalarField& v1, const ScalarField& v2, const ScalarField& vc) {
  const int d = v1.dimension();
  require(v2.dimension() == d && vc.dimension() == d, ErrorKind::DimensionMismatch,
          "chain potentials must share one dimension");
  return ScalarField(
      2 * d,
      [=](const Vec& x) {
        const Vec x1 = x.head(d), x2 = x.tail(d);
        return v1.eval(x1) + v2.eval(x2) + vc.eval(Vec(x2 - x1));
      },
      [=](const Vec& x) {
        const Vec x1 = x.head(d), x2 = x.tail(d);
        const Vec gc = vc.grad(Vec(x2 - x1));
        Vec g(2 * d);
        g.head(d) = v1.grad(x1) - gc;
        g.tail(d) = v2.grad(x2) + gc;
        return g;
      },
      [=](const Vec& x) {
        const Vec x1 = x.head(d), x2 = x.tail(d);
        const Mat Hc = vc.hess(Vec(x2 - x1));
        Mat H(2 * d, 2 * d);
        H.topLeftCorner(d, d) = v1.hess(x1) + Hc;
        H.bottomRightCorner(d, d) = v2.hess(x2) + Hc;
        H.topRightCorner(d, d) = -Hc;
        H.bottomLeftCorner(d, d) = -Hc;
        return H;
      },
      "chain(" + v1.name() + "," + v2.name() + "," + vc.name() + ")",
      v1.growth_note());
}

ScalarField embed(const ScalarField& f, int dim, int offset) {
  const int k = f.dimension();
  require(offset >= 0 && offset + k <= dim, ErrorKind::DimensionMismatch,
          "embedding does not fit");
  return ScalarField(
      dim, [=](const Vec& x) { return f.eval(Vec(x.segment(offset, k))); },
      [=](const Vec& x) {
        Vec g = Vec::Zero(dim);
        g.segment(offset, k) = f.grad(Vec(x.segment(offset, k)));
        return g;
      },
      [=](const Vec& x) {
        Mat H = Mat::Zero(dim, dim);
        H.block(offset, offset, k, k) = f.hess(Vec(x.segment(offset, k)));
        return H;
      },
      f.name(), f.growth_note());
}

ScalarField from_catalog(const std::string& name, const std::vector<double>& p) {
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi)
      throw Error(ErrorKind::ConfigError, "wrong parameter count for potential '" + name + "'");
  };
  if (name == "quadratic") {
    need(0, 2);
    const int dim = p.size() >= 2 ? static_cast<int>(p[1]) : 1;
    return quadratic(dim, p.empty() ? 1.0 : p[0]);
  }
  if (name == "quartic_double_well") {
    need(0, 1);
    return quartic_double_well(p.empty() ? 1.0 : p[0]);
  }
  if (name == "polynomial") {
    need(1, 64);
    return polynomial(p);
  }
  if (name == "well_and_sea") {
    need(0, 0);
    return well_and_sea();
  }
  if (name == "chain_v1") {
    need(0, 0);
    return chain_v1();
  }
  if (name == "chain_v2") {
    need(0, 0);
    return chain_v2();
  }
  if (name == "chain_vc") {
    need(0, 0);
    return chain_vc();
  }
  throw Error(ErrorKind::ConfigError, "unknown potential '" + name + "'");
}

ScalarField from_catalog(const std::string& expression) {
  std::string expr = boost::algorithm::trim_copy(expression);
  const auto open = expr.find('(');
  if (open == std::string::npos) return from_catalog(expr, {});
  if (expr.back() != ')')
    throw Error(ErrorKind::ConfigError, "malformed potential expression '" + expression + "'");
  const std::string name = boost::algorithm::trim_copy(expr.substr(0, open));
  const std::string inner = expr.substr(open + 1, expr.size() - open - 2);
  std::vector<double> params;
  std::vector<std::string> parts;
  boost::algorithm::split(parts, inner, boost::is_any_of(","));
  for (auto& part : parts) {
    boost::algorithm::trim(part);
    if (part.empty()) continue;
    try {
      std::size_t used = 0;
      params.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ConfigError, "bad potential parameter '" + part + "'");
    }
  }
  return from_catalog(name, params);
}

}  // namespace susylab::potential
