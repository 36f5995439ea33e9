#pragma once

#include <cmath>
#include <stdexcept>

#include "minred/mat2.hpp"

namespace minred {

/// Point t + uj of the hyperbolic upper half-plane, u > 0.
struct UpperHalfPoint {
    double t = 0.0;
    double u = 1.0;

    UpperHalfPoint() = default;
    UpperHalfPoint(double t_, double u_) : t(t_), u(u_) {
        if (!(u > 0.0) || !std::isfinite(t) || !std::isfinite(u))
            throw std::invalid_argument("UpperHalfPoint: need finite t and u > 0");
    }

    static UpperHalfPoint j() { return UpperHalfPoint(0.0, 1.0); }
};

/// cosh of the hyperbolic distance; 1 iff the points coincide.
inline double cosh_dist(const UpperHalfPoint& z, const UpperHalfPoint& w) {
    double dt = z.t - w.t, du = z.u - w.u;
    double c = 1.0 + (dt * dt + du * du) / (2.0 * z.u * w.u);
    return c < 1.0 ? 1.0 : c;
}

inline double cosh_dist_to_j(const UpperHalfPoint& z) {
    return (z.t * z.t + z.u * z.u + 1.0) / (2.0 * z.u);
}

/// Moebius action z -> (az+b)/(cz+d) of an integer matrix on H.
inline UpperHalfPoint moebius(const Mat2& g, const UpperHalfPoint& z) {
    double a = g.a.get_d(), b = g.b.get_d(), c = g.c.get_d(), d = g.d.get_d();
    double nr = a * z.t + b, ni = a * z.u;     // numerator a z + b
    double dr = c * z.t + d, di = c * z.u;     // denominator c z + d
    double den = dr * dr + di * di;
    double t = (nr * dr + ni * di) / den;
    double u = (ni * dr - nr * di) / den;
    return UpperHalfPoint(t, u);
}

}  // namespace minred
