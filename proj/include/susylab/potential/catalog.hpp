#pragma once

#include "susylab/potential/scalar_field.hpp"

#include <string>
#include <vector>

namespace susylab::potential {

/// omega |x|^2 / 2 on R^dim.
ScalarField quadratic(int dim = 1, double omega = 1.0);

/// (x^2 - a^2)^2 / 4 on R.
ScalarField quartic_double_well(double a = 1.0);

/// sum_k c_k x^k on R, coefficients in ascending degree.
ScalarField polynomial(std::vector<double> coeffs);

/// x^3/3 - (9/16) x: one well at 3/4, one saddle at -3/4, barrier 9/16.
ScalarField well_and_sea();

/// Oscillator-chain example: x^2/2 + 5 sqrt((x^2-1)^2 + 1).
ScalarField chain_v1();
/// 5 x^2.
ScalarField chain_v2();
/// cos(x) / 10.
ScalarField chain_vc();

/// V(x1, x2) = V1(x1) + V2(x2) + Vc(x2 - x1) with x1, x2 in R^d.
ScalarField chain_potential(const ScalarField& v1, const ScalarField& v2, const ScalarField& vc);

/// Field on R^(dim) that applies f to the coordinates [offset, offset + f.dim).
ScalarField embed(const ScalarField& f, int dim, int offset);

/// Look up a catalog entry. Accepted names: quadratic, quartic_double_well,
/// polynomial, well_and_sea, chain_v1, chain_v2, chain_vc. Unknown names or
/// wrong parameter counts raise ConfigError.
ScalarField from_catalog(const std::string& name, const std::vector<double>& params);

/// Parse "name(p1, p2, ...)" or a bare name.
ScalarField from_catalog(const std::string& expression);

}  // namespace susylab::potential
