#pragma once

#include <gmpxx.h>

#include <array>
#include <stdexcept>
#include <string>

namespace minred {

using Int = mpz_class;
using Rat = mpq_class;

/// 2x2 integer matrix (a b; c d). Used both for SL(2,Z)/GL(2,Z) elements
/// (unimodular) and for the nonsingular integer matrices of the p-adic
/// descent; callers validate the determinant they need via is_unimodular()
/// / require_nonsingular().
struct Mat2 {
    Int a = 1, b = 0, c = 0, d = 1;

    Mat2() = default;
    Mat2(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    Mat2(long a_, long b_, long c_, long d_) : a(a_), b(b_), c(c_), d(d_) {}

    static Mat2 identity() { return Mat2(); }

    Int det() const { return a * d - b * c; }

    bool is_unimodular() const {
        Int t = det();
        return t == 1 || t == -1;
    }
    bool is_sl2() const { return det() == 1; }

    /// Inverse of a unimodular matrix (throws otherwise).
    Mat2 inverse() const {
        Int t = det();
        if (t == 1) return Mat2(d, -b, -c, a);
        if (t == -1) return Mat2(-d, b, c, -a);
        throw std::invalid_argument("Mat2::inverse: matrix is not unimodular");
    }

    /// Adjugate (d -b; -c a); inverse up to det.
    Mat2 adjugate() const { return Mat2(d, -b, -c, a); }

    Mat2 operator*(const Mat2& o) const {
        return Mat2(a * o.a + b * o.c, a * o.b + b * o.d,
                    c * o.a + d * o.c, c * o.b + d * o.d);
    }

    Mat2 operator-() const { return Mat2(-a, -b, -c, -d); }

    bool operator==(const Mat2& o) const = default;

    /// Lexicographic order on (a, b, c, d); the deterministic tie-break.
    bool lex_less(const Mat2& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }

    std::array<Int, 4> entries() const { return {a, b, c, d}; }

    std::string str() const {
        return "(" + a.get_str() + " " + b.get_str() + "; " + c.get_str() + " " +
               d.get_str() + ")";
    }
};

inline void require_nonsingular(const Mat2& m, const char* where) {
    if (m.det() == 0)
        throw std::invalid_argument(std::string(where) + ": singular matrix");
}

inline void require_unimodular(const Mat2& m, const char* where) {
    if (!m.is_unimodular())
        throw std::invalid_argument(std::string(where) + ": determinant not +-1");
}

}  // namespace minred
