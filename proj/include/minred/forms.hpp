#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "minred/mat2.hpp"

namespace minred {

/// Integral binary form a_0 x^n + a_1 x^{n-1} y + ... + a_n y^n, coefficients
/// stored in descending powers of x. The degree is formal: leading or trailing
/// coefficients may vanish, but the form itself must be nonzero.
class BinaryForm {
public:
    explicit BinaryForm(std::vector<Int> coeffs);
    BinaryForm(std::initializer_list<long> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Int>& coeffs() const { return coeffs_; }
    /// Coefficient of x^{n-i} y^i.
    const Int& coeff(int i) const { return coeffs_[static_cast<size_t>(i)]; }

    bool operator==(const BinaryForm& o) const = default;

    std::string str() const;

private:
    std::vector<Int> coeffs_;
};

/// Right substitution action F(x,y) . (a b; c d) = F(ax+by, cx+dy).
/// gamma may be any integer matrix (the p-adic descent conjugates by
/// nonsingular, non-unimodular matrices).
BinaryForm act(const BinaryForm& f, const Mat2& gamma);

/// ||F|| = sum of squared coefficients.
Int size(const BinaryForm& f);

/// H_inf(F) = max |a_i|.
Int height_inf(const BinaryForm& f);

/// Content of the coefficient tuple (gcd, positive).
Int content(const BinaryForm& f);

/// H_0(F) = prod_p max_i |a_i|_p; equals 1/content for integer forms.
Rat content_height(const BinaryForm& f);

/// Divide out the content and make the first nonzero coefficient positive.
BinaryForm normalize(const BinaryForm& f);

/// Resultant of two forms of equal formal degree d, as the determinant of the
/// 2d x 2d Sylvester matrix with the F-rows first.
Int resultant(const BinaryForm& f, const BinaryForm& g);

/// Exact multiplication of forms.
BinaryForm mul(const BinaryForm& f, const BinaryForm& g);

/// Exact division of forms; throws DomainError(inexact_division) if g does not
/// divide f in Z[x,y].
BinaryForm divide_exact(const BinaryForm& f, const BinaryForm& g);

/// F(A(x,y), B(x,y)) for forms A, B of equal degree; degree deg(F)*deg(A).
BinaryForm compose(const BinaryForm& f, const BinaryForm& a, const BinaryForm& b);

/// Multiplicity structure over C: the multiplicity of [1:0] (the y^v factor)
/// plus the exact squarefree decomposition of F(x,1) over Z.
struct MultiplicityProfile {
    int infinity_multiplicity = 0;                 // power of y dividing F
    std::vector<std::pair<std::vector<Int>, int>>  // (primitive squarefree factor
        factors;                                   //  of F(x,1), ascending coeffs,
                                                   //  multiplicity)
    int max_multiplicity() const;
};

MultiplicityProfile multiplicity_profile(const BinaryForm& f);

/// True iff F has no repeated linear factor over C.
bool is_squarefree(const BinaryForm& f);

/// True iff no linear factor of F has multiplicity >= n/2.
bool is_stable(const BinaryForm& f);

// --- univariate helpers on ascending integer coefficient vectors ---
// (used by the squarefree machinery and by tests; degree = size-1 after
// normalization, trailing zero coefficients trimmed)
namespace upoly {
using Poly = std::vector<Int>;  // p[i] is the coefficient of x^i

Poly trim(Poly p);
Poly mul(const Poly& p, const Poly& q);
Poly derivative(const Poly& p);
Int content(const Poly& p);
Poly primitive_part(const Poly& p);
/// gcd of primitive parts, primitive with positive leading coefficient.
Poly gcd(Poly p, Poly q);
/// Exact division; second element is false if q does not divide p over Q or
/// the quotient is not integral.
std::pair<Poly, bool> div_exact(const Poly& p, const Poly& q);
/// Yun squarefree decomposition of a primitive polynomial: list of
/// (squarefree factor, multiplicity) with multiplicity >= 1, nonconstant
/// factors only.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);
}  // namespace upoly

}  // namespace minred
