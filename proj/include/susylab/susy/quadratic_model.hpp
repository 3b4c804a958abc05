#pragma once

#include "susylab/susy/susy.hpp"

#include <vector>

namespace susylab::susy {

/// Linearization at a critical point x0 of the Hamilton field of the
/// quadratic part of the symbol, as a complex 2n x 2n matrix acting on
/// (x - x0, xi).
CMat hamilton_map(const SusySpec& spec, const Vec& x0);

/// Eigenvalues lambda of the Hamilton map with Im lambda > 0.
std::vector<Complex> hamilton_eigenvalues(const SusySpec& spec, const Vec& x0);

/// Rescaled levels mu (the eigenvalues of P near x0 are h mu + o(h)):
///   mu = sum_l (nu_l + 1/2) lambda_l / i - tr(B phi''(x0)),  nu in N^n,
/// the `count` smallest by modulus.
std::vector<Complex> quadratic_model_levels(const SusySpec& spec, const Vec& x0, int count);

}  // namespace susylab::susy
