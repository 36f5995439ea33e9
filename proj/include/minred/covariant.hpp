#pragma once

#include <vector>

#include "minred/forms.hpp"
#include "minred/halfplane.hpp"
#include "minred/roots.hpp"

namespace minred {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;  // R^3 = C x R, (x, y) the complex part
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// Roots with their stereographic images phi_k on the unit sphere:
/// phi_k = (2 alpha_k, |alpha_k|^2 - 1) / (|alpha_k|^2 + 1), the root at
/// infinity mapping to (0, 0, 1).
struct RootSphereData {
    struct RootPair {
        std::complex<double> alpha;
        double beta;  // 1 for finite roots, 0 for the root at infinity
    };
    std::vector<RootPair> roots;
    std::vector<Vec3> phis;
};

RootSphereData sphere_data(const FormRoots& roots);

/// Result of the covariant-point minimization.
struct CovariantResult {
    UpperHalfPoint z;
    double theta = 0.0;     // R(F, z(F))
    double residual = 0.0;  // final gradient norm of log R in (t, log u)
};

/// R(F, t+uj) = prod_k (|alpha_k - beta_k t|^2 + |beta_k|^2 u^2) / u.
double r_value(const FormRoots& roots, const UpperHalfPoint& z);
double r_value(const BinaryForm& f, const UpperHalfPoint& z);
double r_value(const RealForm& f, const UpperHalfPoint& z);

/// Unique minimizer z(F) of R(F, .) for a stable form, found by Newton descent
/// on log R in (t, log u) with gradient-descent fallback. tol is the target
/// gradient norm (default 1e-12; the CLI can override via MINRED_TOL_Z).
CovariantResult covariant_point(const FormRoots& roots, int degree, double tol = 1e-12);
CovariantResult covariant_point(const BinaryForm& f, double tol = 1e-12);

/// F0(x,y) = F1(u0^{1/2} x, u0^{-1/2} y) with F1 = F(x + t0 y, y): the form
/// recentered so that z(F0) = j.
RealForm recentered_form(const BinaryForm& f, const UpperHalfPoint& z);

/// Recentered root data: finite roots map to (r - t0)/u0, infinity stays.
FormRoots recenter_roots(const FormRoots& roots, const UpperHalfPoint& z);

/// Proven fallback lower bound for eps(F0): 1 when n = 3, else eta^{n-1}/2
/// with eta = 1 - max_{k != k'} sqrt((<phi_k, phi_k'> + 1)/2). Throws
/// DomainError(repeated_root) when two phi_k coincide within 1e-10.
double eps_fallback(const RootSphereData& sphere, int degree);
/// The eta-formula value regardless of degree (the n = 3 shortcut skipped).
double eps_fallback_eta(const RootSphereData& sphere, int degree);

/// Certified lower bound for eps_{F0}(delta) = min_{dist(z,j)=delta}
/// R(F0,z)/R(F0,j), minimized over tangent directions on the real circle.
/// The circle is covered by M base cells; every cell is bounded below by the
/// product of the exact per-root sinusoid minima over the cell, and cells are
/// split until the bound is within rel_slack of the best sampled value.
double eps_profile(const RootSphereData& sphere, double delta, int threads = 1,
                   double rel_slack = 1e-4, int base_cells = 2048);

/// c >= cosh(eps_{F0}^{-1}(B)), found by doubling + bisection on the certified
/// profile and inflated by the 1.001 safety factor.
double eps_inverse_cosh(const RootSphereData& sphere, double bound_arg, int threads = 1);

/// R(F0, z)/R(F0, j) evaluated through the sphere product formula
/// prod_k (cosh d - <nu, phi_k> sinh d), nu the unit tangent at j toward z.
double r_quotient_formula(const RootSphereData& sphere, const UpperHalfPoint& z);

/// UNSAFE experimental optimizer for the eps(F0) infimum
/// inf_{phi, 0<=rho<1} prod_k (1 + <phi, phi_k> rho) / (1 - rho^2): a grid
/// minimum is an upper bound of an infimum, so this value must never feed the
/// certified search region. Kept for experimentation against eps_fallback.
double eps_optimized_unsafe(const RootSphereData& sphere);

}  // namespace minred
