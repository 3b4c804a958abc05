#include "susylab/susy/susy.hpp"

#include "susylab/potential/catalog.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace susylab::susy {

using potential::ScalarField;

SusyMatrix SusyMatrix::from(const Mat& A) {
  require(A.rows() == A.cols() && A.rows() > 0, ErrorKind::DimensionMismatch, "A must be square");
  SusyMatrix m;
  m.A = A;
  m.B = 0.5 * (A + A.transpose());
  m.C = 0.5 * (A - A.transpose());
  Eigen::JacobiSVD<Mat> svd(A);
  const Vec s = svd.singularValues();
  require(s.minCoeff() > 0, ErrorKind::InvalidArgument, "A must be invertible");
  m.condition = s.maxCoeff() / s.minCoeff();
  require(std::isfinite(m.condition), ErrorKind::InvalidArgument, "A must be invertible");
  Eigen::SelfAdjointEigenSolver<Mat> es(m.B, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-12, ErrorKind::InvalidArgument,
          "symmetric part of A must be positive semidefinite");
  return m;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Witten: return "witten";
    case Family::Kfp: return "kfp";
    case Family::Chain: return "chain";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "witten") return Family::Witten;
  if (name == "kfp") return Family::Kfp;
  if (name == "chain") return Family::Chain;
  if (name == "custom") return Family::Custom;
  throw Error(ErrorKind::ConfigError, "unknown family '" + name + "'");
}

SusySpec make_spec(const Mat& A, const ScalarField& phase, Family family, double gamma) {
  SusySpec s;
  s.matrix = SusyMatrix::from(A);
  s.phase = phase;
  s.dim = phase.dimension();
  require(s.matrix.size() == s.dim, ErrorKind::DimensionMismatch, "A and phase dimensions differ");
  s.family = family;
  s.gamma = gamma;
  s.effective = phase;
  s.tag = to_string(family) + ":" + phase.name();
  return s;
}

SusySpec assemble_witten(double gamma, const ScalarField& V) {
  require(gamma > 0, ErrorKind::InvalidArgument, "gamma must be positive");
  const int n = V.dimension();
  SusySpec s = make_spec(0.5 * gamma * Mat::Identity(n, n), V, Family::Witten, gamma);
  s.effective = V;
  return s;
}

SusySpec assemble_kfp(double gamma, const ScalarField& V) {
  require(gamma > 0, ErrorKind::InvalidArgument, "gamma must be positive");
  const int n = V.dimension();
  Mat A = Mat::Zero(2 * n, 2 * n);
  A.block(0, n, n, n) = 0.5 * Mat::Identity(n, n);
  A.block(n, 0, n, n) = -0.5 * Mat::Identity(n, n);
  A.block(n, n, n, n) = 0.5 * gamma * Mat::Identity(n, n);
  ScalarField phase(
      2 * n, [V, n](const Vec& q) { return V.eval(Vec(q.head(n))) + 0.5 * q.tail(n).squaredNorm(); },
      [V, n](const Vec& q) {
        Vec g(2 * n);
        g.head(n) = V.grad(Vec(q.head(n)));
        g.tail(n) = q.tail(n);
        return g;
      },
      [V, n](const Vec& q) {
        Mat H = Mat::Zero(2 * n, 2 * n);
        H.topLeftCorner(n, n) = V.hess(Vec(q.head(n)));
        H.bottomRightCorner(n, n) = Mat::Identity(n, n);
        return H;
      },
      V.name() + "+|y|^2/2", V.growth_note());
  SusySpec s = make_spec(A, phase, Family::Kfp, gamma);
  s.effective = V;
  return s;
}

SusySpec assemble_chain(double gamma, const ScalarField& V1, const ScalarField& V2, const ScalarField& Vc) {
  require(gamma > 0, ErrorKind::InvalidArgument, "gamma must be positive");
  const int d = V1.dimension();
  if (V2.dimension() != d || Vc.dimension() != d)
    throw Error(ErrorKind::DimensionMismatch, "chain potentials must share one dimension");
  const ScalarField V = potential::chain_potential(V1, V2, Vc);
  const int m = 2 * d;  // size of each of the x, y, z blocks
  const int n = 3 * m;
  Mat A = Mat::Zero(n, n);
  A.block(0, m, m, m) = 0.5 * Mat::Identity(m, m);
  A.block(m, 0, m, m) = -0.5 * Mat::Identity(m, m);
  A.block(2 * m, 2 * m, m, m) = 0.5 * gamma * Mat::Identity(m, m);
  ScalarField phase(
      n,
      [V, m](const Vec& q) {
        const Vec x = q.head(m), y = q.segment(m, m), z = q.tail(m);
        return V.eval(x) + 0.5 * y.squaredNorm() + 0.5 * z.squaredNorm() - z.dot(x);
      },
      [V, m, n](const Vec& q) {
        const Vec x = q.head(m), y = q.segment(m, m), z = q.tail(m);
        Vec g(n);
        g.head(m) = V.grad(x) - z;
        g.segment(m, m) = y;
        g.tail(m) = z - x;
        return g;
      },
      [V, m, n](const Vec& q) {
        Mat H = Mat::Zero(n, n);
        const Mat I = Mat::Identity(m, m);
        H.topLeftCorner(m, m) = V.hess(Vec(q.head(m)));
        H.block(m, m, m, m) = I;
        H.block(2 * m, 2 * m, m, m) = I;
        H.block(0, 2 * m, m, m) = -I;
        H.block(2 * m, 0, m, m) = -I;
        return H;
      },
      "Phi[" + V.name() + "]", V.growth_note());
  SusySpec s = make_spec(A, phase, Family::Chain, gamma);
  s.chain_d = d;
  s.effective = potential::minus_half_square(V);
  return s;
}

SymbolParts symbol_parts(const SusySpec& spec, const Vec& x, const Vec& xi) {
  require(x.size() == spec.dim && xi.size() == spec.dim, ErrorKind::DimensionMismatch,
          "symbol arguments have the wrong dimension");
  const Vec g = spec.phase.grad(x);
  SymbolParts p;
  p.p2 = xi.dot(spec.matrix.B * xi);
  p.p1 = 2.0 * xi.dot(spec.matrix.C * g);
  p.p0 = g.dot(spec.matrix.B * g);
  return p;
}

Complex principal_symbol(const SusySpec& spec, const Vec& x, const Vec& xi) {
  return symbol_parts(spec, x, xi).value();
}

Vec transport_field(const SusySpec& spec, const Vec& x) {
  return 2.0 * spec.matrix.C * spec.phase.grad(x);
}

double apply_continuum(const SusySpec& spec, const Jet& u, const Vec& x, double h) {
  require(u.grad.size() == spec.dim && u.hess.rows() == spec.dim, ErrorKind::DimensionMismatch,
          "jet has the wrong dimension");
  const Mat& B = spec.matrix.B;
  const Vec g = spec.phase.grad(x);
  const Mat H = spec.phase.hess(x);
  const double second = -h * h * (B.cwiseProduct(u.hess)).sum();
  const double first = 2.0 * h * u.grad.dot(spec.matrix.C * g);
  const double zeroth = (g.dot(B * g) - h * (B * H).trace()) * u.value;
  return second + first + zeroth;
}

Jet maxwellian_jet(const SusySpec& spec, const Vec& x, double h) {
  const Vec g = spec.phase.grad(x);
  const Mat H = spec.phase.hess(x);
  Jet j;
  j.value = std::exp(-spec.phase.eval(x) / h);
  j.grad = -j.value / h * g;
  j.hess = j.value * (g * g.transpose() / (h * h) - H / h);
  return j;
}

double apply_kfp_direct(double gamma, const ScalarField& V, const Jet& u, const Vec& xy, double h) {
  const int n = V.dimension();
  require(xy.size() == 2 * n, ErrorKind::DimensionMismatch, "kinetic point has the wrong dimension");
  const Vec x = xy.head(n), y = xy.tail(n);
  const Vec dV = V.grad(x);
  double out = h * y.dot(u.grad.head(n)) - h * dV.dot(u.grad.tail(n));
  // (-h d_y + y)(h d_y + y) u = -h^2 u_yy + |y|^2 u - h n u
  const double lap_y = u.hess.bottomRightCorner(n, n).trace();
  out += 0.5 * gamma * (-h * h * lap_y + y.squaredNorm() * u.value - h * n * u.value);
  return out;
}

}  // namespace susylab::susy
