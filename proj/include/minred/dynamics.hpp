#pragma once

#include <optional>
#include <utility>

#include "minred/forms.hpp"
#include "minred/mat2.hpp"
#include "minred/reduce.hpp"

namespace minred {

/// Integral model [F : G] of an endomorphism of P^1, two forms of equal
/// degree with nonzero resultant. Coprimality of the coefficient set is a
/// normal form applied by normalize_model, not a construction invariant.
struct EndoModel {
    BinaryForm num;
    BinaryForm den;

    EndoModel(BinaryForm f, BinaryForm g);

    int degree() const { return num.degree(); }

    bool operator==(const EndoModel& o) const = default;

    /// Concatenated coefficient tuple (num then den).
    std::vector<Int> concat_coeffs() const;

    std::string str() const;
};

/// Joint content removed, first nonzero coefficient of the concatenation
/// positive.
EndoModel normalize_model(const EndoModel& f);

/// Resultant of the pair, both forms taken with formal degree d.
Int model_resultant(const EndoModel& f);

/// H(f): max |coefficient| over both forms (call on a normalized model).
Int model_height(const EndoModel& f);

/// Adjoint-twisted conjugation, normalized:
///   F^g = d F(ax+by, cx+dy) - b G(ax+by, cx+dy),
///   G^g = -c F(ax+by, cx+dy) + a G(ax+by, cx+dy).
EndoModel conjugate(const EndoModel& f, const Mat2& gamma);

/// m-th iterate [F_m : G_m] as raw compositions (content kept), degree d^m.
std::pair<BinaryForm, BinaryForm> iterate(const EndoModel& f, int m);

/// Phi_m(f) = y F_m - x G_m, normalized. Zeros are the period-m points.
BinaryForm period_form(const EndoModel& f, int m);

/// Phi*_m(f) = prod_{k|m} (y F_k - x G_k)^{mu(m/k)}, exact division, normalized.
BinaryForm dynatomic_form(const EndoModel& f, int m);

enum class PhiVariant { full, dynatomic };

/// Constants of the size bound ||Phi|| <= C H(f)^k.
struct SizeBoundConstants {
    Int C;
    int k = 0;
    PhiVariant variant = PhiVariant::full;
    int d = 0;
    int m = 0;
};

/// Table lookup for the known (d, m) pairs; otherwise the exact generic
/// computation (coefficientwise symbolic expansion). Results are memoized,
/// and persisted to the file named by MINRED_CONST_CACHE when set.
SizeBoundConstants constants_for(int d, int m, PhiVariant variant);

/// Exact generic-coefficient computation of the constants (no table):
/// C = sum_i ||P_i||_1^2 over the coefficient polynomials P_i of Phi, and k
/// the homogeneity degree of sum_i P_i^2.
SizeBoundConstants generic_constants(int d, int m, PhiVariant variant);

struct EndoReduction {
    Mat2 gamma;
    EndoModel reduced;
    Int height;
    SearchStats stats;
    int phi_period = 0;
    PhiVariant phi_variant = PhiVariant::full;
};

/// Smallest-height conjugate in the SL(2,Z)-orbit of f. The auxiliary form
/// Phi is auto-selected as the first stable choice of degree >= 3 among
/// (m=1, full), (m=2, dynatomic), (m=2, full), (m=3, dynatomic); forced_m
/// restricts the selection to that period.
EndoReduction reduced_conjugate(const EndoModel& f, std::optional<int> forced_m = {},
                                int threads = 1, double tol_z = 1e-12);

}  // namespace minred
