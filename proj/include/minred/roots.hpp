#pragma once

#include <complex>
#include <vector>

#include "minred/forms.hpp"

namespace minred {

/// Real-coefficient binary form, descending powers of x. Produced by the
/// recentering substitution; only needed in floating point.
struct RealForm {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Float root data of a binary form: F = lead * prod (x - r_k y) * y^v with
/// the finite roots listed with multiplicity and v roots at [1:0].
struct FormRoots {
    std::vector<std::complex<double>> finite;
    int at_infinity = 0;
    double abs_lead = 1.0;

    int total() const { return static_cast<int>(finite.size()) + at_infinity; }
};

/// Aberth-Ehrlich simultaneous iteration with Newton polish on a squarefree
/// double-coefficient polynomial (ascending coefficients, nonzero leading and
/// constant term). Throws DomainError(degenerate_roots) on non-convergence.
std::vector<std::complex<double>> aberth_roots(const std::vector<double>& ascending);

/// Roots of an integral form. Exact preprocessing: monomial factors x^s y^v are
/// split off and the squarefree decomposition is computed over Z, so Aberth
/// only ever sees squarefree factors.
FormRoots form_roots(const BinaryForm& f);

/// Roots of a float form; near-zero leading coefficients (relative to the
/// largest coefficient) are treated as roots at infinity.
FormRoots form_roots(const RealForm& f);

}  // namespace minred
