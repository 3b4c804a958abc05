#pragma once

#include "susylab/potential/scalar_field.hpp"

#include <string>

namespace susylab::susy {

/// Constant matrix A split into its symmetric part B and antisymmetric part C.
struct SusyMatrix {
  Mat A;
  Mat B;
  Mat C;
  double condition = 0.0;

  /// Validates invertibility, B >= 0 (to -1e-12) and the split.
  static SusyMatrix from(const Mat& A);
  int size() const { return static_cast<int>(A.rows()); }
};

enum class Family { Witten, Kfp, Chain, Custom };
std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Data of the operator P = sum_jk Z_j^* (B - C)_jk Z_k with Z_k = h d_k + d_k phi,
/// whose expanded form is
///   -h^2 B:u'' + 2h <C phi', u'> + (<B phi', phi'> - h tr(B phi'')) u.
struct SusySpec {
  SusyMatrix matrix;
  potential::ScalarField phase;
  int dim = 0;
  Family family = Family::Custom;
  double gamma = 0.0;
  /// Block size d of the chain (variables x, y, z each in R^(2d)); 0 otherwise.
  int chain_d = 0;
  /// Effective potential whose critical points match those of the phase.
  potential::ScalarField effective;
  std::string tag;
};

SusySpec make_spec(const Mat& A, const potential::ScalarField& phase, Family family = Family::Custom,
                   double gamma = 0.0);

/// A = (gamma/2) I, phase V.
SusySpec assemble_witten(double gamma, const potential::ScalarField& V);

/// A = 1/2 [[0, I], [-I, gamma I]] in (x, y), phase V(x) + |y|^2/2.
SusySpec assemble_kfp(double gamma, const potential::ScalarField& V);

/// A = 1/2 [[0, I, 0], [-I, 0, 0], [0, 0, gamma I]] in (x, y, z) with each
/// block in R^(2d), phase V(x) + |y|^2/2 + |z|^2/2 - z.x and
/// V(x1, x2) = V1(x1) + V2(x2) + Vc(x2 - x1).
SusySpec assemble_chain(double gamma, const potential::ScalarField& V1, const potential::ScalarField& V2,
                        const potential::ScalarField& Vc);

struct SymbolParts {
  double p2 = 0.0;
  double p1 = 0.0;
  double p0 = 0.0;
  Complex value() const { return {p2 + p0, p1}; }
};

/// p = <B xi, xi> + 2i <C phi'(x), xi> + <B phi'(x), phi'(x)>.
SymbolParts symbol_parts(const SusySpec& spec, const Vec& x, const Vec& xi);
Complex principal_symbol(const SusySpec& spec, const Vec& x, const Vec& xi);

/// Transport field c(x) = 2 C phi'(x); p1 = <c(x), xi>.
Vec transport_field(const SusySpec& spec, const Vec& x);

/// Value, gradient and Hessian of a test function at a point.
struct Jet {
  double value = 0.0;
  Vec grad;
  Mat hess;
};

/// Pointwise value of P u at x from the 2-jet of u.
double apply_continuum(const SusySpec& spec, const Jet& u, const Vec& x, double h);

/// 2-jet of exp(-phi/h) at x.
Jet maxwellian_jet(const SusySpec& spec, const Vec& x, double h);

/// Direct implementation of the kinetic operator
///   y.h d_x - V'(x).h d_y + (gamma/2)(-h d_y + y).(h d_y + y)
/// used as an independent cross-check of the kfp assembly.
double apply_kfp_direct(double gamma, const potential::ScalarField& V, const Jet& u, const Vec& xy,
                        double h);

}  // namespace susylab::susy
