#include "minred/forms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "minred/errors.hpp"

namespace minred {

BinaryForm::BinaryForm(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2)
        throw std::invalid_argument("BinaryForm: degree must be at least 1");
    bool nonzero = false;
    for (const Int& c : coeffs_) nonzero = nonzero || c != 0;
    if (!nonzero) throw std::invalid_argument("BinaryForm: zero form");
}

BinaryForm::BinaryForm(std::initializer_list<long> coeffs)
    : BinaryForm(std::vector<Int>(coeffs.begin(), coeffs.end())) {}

std::string BinaryForm::str() const {
    std::ostringstream os;
    const int n = degree();
    bool first = true;
    for (int i = 0; i <= n; ++i) {
        const Int& c = coeffs_[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int ac = abs(c);
        int xp = n - i, yp = i;
        bool bare = (ac == 1) && (xp + yp > 0);
        if (!bare) os << ac.get_str();
        if (xp > 0) os << "x" << (xp > 1 ? "^" + std::to_string(xp) : "");
        if (yp > 0) os << "y" << (yp > 1 ? "^" + std::to_string(yp) : "");
        first = false;
    }
    return os.str();
}

BinaryForm act(const BinaryForm& f, const Mat2& g) {
    const int n = f.degree();
    // Expand sum_i a_i (ax+by)^{n-i} (cx+dy)^i by building the power tables.
    std::vector<std::vector<Int>> pow1(static_cast<size_t>(n) + 1),
        pow2(static_cast<size_t>(n) + 1);
    pow1[0] = {Int(1)};
    pow2[0] = {Int(1)};
    for (int k = 1; k <= n; ++k) {
        const auto& p1 = pow1[static_cast<size_t>(k - 1)];
        const auto& p2 = pow2[static_cast<size_t>(k - 1)];
        std::vector<Int> q1(static_cast<size_t>(k) + 1, Int(0));
        std::vector<Int> q2(static_cast<size_t>(k) + 1, Int(0));
        for (int j = 0; j < k; ++j) {
            q1[static_cast<size_t>(j)] += g.a * p1[static_cast<size_t>(j)];
            q1[static_cast<size_t>(j + 1)] += g.b * p1[static_cast<size_t>(j)];
            q2[static_cast<size_t>(j)] += g.c * p2[static_cast<size_t>(j)];
            q2[static_cast<size_t>(j + 1)] += g.d * p2[static_cast<size_t>(j)];
        }
        pow1[static_cast<size_t>(k)] = std::move(q1);
        pow2[static_cast<size_t>(k)] = std::move(q2);
    }
    std::vector<Int> out(static_cast<size_t>(n) + 1, Int(0));
    for (int i = 0; i <= n; ++i) {
        const Int& ai = f.coeff(i);
        if (ai == 0) continue;
        const auto& p1 = pow1[static_cast<size_t>(n - i)];  // (ax+by)^{n-i}
        const auto& p2 = pow2[static_cast<size_t>(i)];      // (cx+dy)^i
        for (size_t j = 0; j < p1.size(); ++j) {
            if (p1[j] == 0) continue;
            for (size_t k = 0; k < p2.size(); ++k) {
                if (p2[k] == 0) continue;
                out[j + k] += ai * p1[j] * p2[k];
            }
        }
    }
    return BinaryForm(std::move(out));
}

Int size(const BinaryForm& f) {
    Int s = 0;
    for (const Int& c : f.coeffs()) s += c * c;
    return s;
}

Int height_inf(const BinaryForm& f) {
    Int h = 0;
    for (const Int& c : f.coeffs()) {
        Int a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

Int content(const BinaryForm& f) {
    Int g = 0;
    for (const Int& c : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Rat content_height(const BinaryForm& f) {
    Rat h(1);
    h /= content(f);
    return h;
}

BinaryForm normalize(const BinaryForm& f) {
    Int g = content(f);
    for (const Int& c : f.coeffs()) {
        if (c == 0) continue;
        if (c < 0) g = -g;
        break;
    }
    std::vector<Int> out;
    out.reserve(f.coeffs().size());
    for (const Int& c : f.coeffs()) out.push_back(c / g);
    return BinaryForm(std::move(out));
}

// Bareiss fraction-free determinant; exact over Z.
static Int bareiss_det(std::vector<std::vector<Int>> m) {
    const size_t n = m.size();
    int sign = 1;
    Int prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return Int(0);
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

Int resultant(const BinaryForm& f, const BinaryForm& g) {
    if (f.degree() != g.degree())
        throw std::invalid_argument("resultant: degrees must match");
    const int d = f.degree();
    const size_t n = 2 * static_cast<size_t>(d);
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i)
            m[static_cast<size_t>(r)][static_cast<size_t>(r + i)] = f.coeff(i);
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= d; ++i)
            m[static_cast<size_t>(d + r)][static_cast<size_t>(r + i)] = g.coeff(i);
    return bareiss_det(std::move(m));
}

BinaryForm mul(const BinaryForm& f, const BinaryForm& g) {
    std::vector<Int> out(f.coeffs().size() + g.coeffs().size() - 1, Int(0));
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0) continue;
        for (size_t j = 0; j < g.coeffs().size(); ++j)
            out[i + j] += f.coeffs()[i] * g.coeffs()[j];
    }
    return BinaryForm(std::move(out));
}

BinaryForm compose(const BinaryForm& f, const BinaryForm& a, const BinaryForm& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("compose: argument degrees must match");
    const int n = f.degree();
    const int m = a.degree();
    // Horner in the pair (A, B): result = ((a_0 A + a_1 B) A + a_2 B^2) ... keeps
    // intermediate degrees tight. We instead accumulate a_i A^{n-i} B^i directly;
    // degrees stay <= n*m and the power tables are shared.
    std::vector<std::vector<Int>> powa(static_cast<size_t>(n) + 1),
        powb(static_cast<size_t>(n) + 1);
    powa[0] = {Int(1)};
    powb[0] = {Int(1)};
    for (int k = 1; k <= n; ++k) {
        auto step = [&](const std::vector<Int>& prev, const BinaryForm& base) {
            std::vector<Int> q(prev.size() + static_cast<size_t>(m), Int(0));
            for (size_t i = 0; i < prev.size(); ++i) {
                if (prev[i] == 0) continue;
                for (size_t j = 0; j < base.coeffs().size(); ++j)
                    q[i + j] += prev[i] * base.coeffs()[j];
            }
            return q;
        };
        powa[static_cast<size_t>(k)] = step(powa[static_cast<size_t>(k - 1)], a);
        powb[static_cast<size_t>(k)] = step(powb[static_cast<size_t>(k - 1)], b);
    }
    std::vector<Int> out(static_cast<size_t>(n * m) + 1, Int(0));
    for (int i = 0; i <= n; ++i) {
        const Int& ci = f.coeff(i);
        if (ci == 0) continue;
        const auto& pa = powa[static_cast<size_t>(n - i)];
        const auto& pb = powb[static_cast<size_t>(i)];
        for (size_t j = 0; j < pa.size(); ++j) {
            if (pa[j] == 0) continue;
            for (size_t k = 0; k < pb.size(); ++k)
                if (pb[k] != 0) out[j + k] += ci * pa[j] * pb[k];
        }
    }
    return BinaryForm(std::move(out));
}

namespace upoly {

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly mul(const Poly& p, const Poly& q) {
    if (p.empty() || q.empty()) return {};
    Poly out(p.size() + q.size() - 1, Int(0));
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        for (size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    }
    return out;
}

Poly derivative(const Poly& p) {
    Poly out;
    for (size_t i = 1; i < p.size(); ++i) out.push_back(Int(static_cast<long>(i)) * p[i]);
    return trim(std::move(out));
}

Int content(const Poly& p) {
    Int g = 0;
    for (const Int& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly primitive_part(const Poly& p) {
    Poly t = trim(p);
    if (t.empty()) return t;
    Int g = content(t);
    if (t.back() < 0) g = -g;
    for (Int& c : t) c /= g;
    return t;
}

// Pseudo-remainder of p by q (q nonzero, deg p >= deg q not required).
static Poly prem(Poly r, const Poly& q) {
    const Int& lead = q.back();
    r = trim(std::move(r));
    while (r.size() >= q.size()) {
        Int top = r.back();
        for (Int& c : r) c *= lead;
        size_t off = r.size() - q.size();
        for (size_t i = 0; i < q.size(); ++i) r[off + i] -= top * q[i];
        r = trim(std::move(r));
    }
    return r;
}

// Primitive PRS Euclid; content removed each step.
Poly gcd(Poly p, Poly q) {
    p = primitive_part(std::move(p));
    q = primitive_part(std::move(q));
    if (p.empty()) return q;
    if (q.empty()) return p;
    if (p.size() < q.size()) std::swap(p, q);
    while (!q.empty()) {
        Poly r = prem(p, q);
        p = std::move(q);
        q = primitive_part(std::move(r));
    }
    return p;
}

std::pair<Poly, bool> div_exact(const Poly& p0, const Poly& q0) {
    Poly p = trim(p0), q = trim(q0);
    if (q.empty()) return {{}, false};
    if (p.empty()) return {{}, true};
    if (p.size() < q.size()) return {{}, false};
    // Division over Q with exactness checks; quotient must be integral.
    std::vector<Rat> r(p.begin(), p.end());
    std::vector<Rat> quo(p.size() - q.size() + 1);
    for (int k = static_cast<int>(quo.size()) - 1; k >= 0; --k) {
        Rat c = r[static_cast<size_t>(k) + q.size() - 1] / Rat(q.back());
        quo[static_cast<size_t>(k)] = c;
        if (c != 0)
            for (size_t i = 0; i < q.size(); ++i)
                r[static_cast<size_t>(k) + i] -= c * Rat(q[i]);
    }
    for (const Rat& c : r)
        if (c != 0) return {{}, false};
    Poly out;
    out.reserve(quo.size());
    for (Rat& c : quo) {
        c.canonicalize();
        if (c.get_den() != 1) return {{}, false};
        out.push_back(c.get_num());
    }
    return {trim(std::move(out)), true};
}

static Poly sub(const Poly& p, const Poly& q) {
    Poly r(std::max(p.size(), q.size()), Int(0));
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i];
    for (size_t i = 0; i < q.size(); ++i) r[i] -= q[i];
    return trim(std::move(r));
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p0) {
    std::vector<std::pair<Poly, int>> out;
    Poly p = primitive_part(p0);
    if (p.size() <= 1) return out;
    // Yun's algorithm (characteristic 0).
    Poly dp = derivative(p);
    Poly a = gcd(p, dp);
    auto [b, okb] = div_exact(p, a);
    auto [c, okc] = div_exact(dp, a);
    if (!okb || !okc) throw std::logic_error("squarefree_decomposition: inexact");
    Poly d = sub(c, derivative(b));
    int mult = 1;
    while (b.size() > 1) {
        Poly f = gcd(b, d);
        if (f.size() > 1) out.emplace_back(f, mult);
        auto [b2, ok1] = div_exact(b, f);
        auto [c2, ok2] = div_exact(d, f);
        if (!ok1 || !ok2) throw std::logic_error("squarefree_decomposition: inexact step");
        b = std::move(b2);
        d = sub(c2, derivative(b));
        ++mult;
    }
    return out;
}

}  // namespace upoly

int MultiplicityProfile::max_multiplicity() const {
    int m = infinity_multiplicity;
    for (const auto& [f, k] : factors) m = std::max(m, k);
    return m;
}

MultiplicityProfile multiplicity_profile(const BinaryForm& f) {
    MultiplicityProfile prof;
    const auto& cs = f.coeffs();
    size_t lead = 0;
    while (lead < cs.size() && cs[lead] == 0) ++lead;
    prof.infinity_multiplicity = static_cast<int>(lead);
    // F(x,1) ascending: coefficient of x^k is a_{n-k}.
    upoly::Poly p(cs.rbegin(), cs.rend());
    p = upoly::trim(std::move(p));
    prof.factors = upoly::squarefree_decomposition(p);
    return prof;
}

bool is_squarefree(const BinaryForm& f) {
    MultiplicityProfile prof = multiplicity_profile(f);
    if (prof.infinity_multiplicity > 1) return false;
    for (const auto& [factor, mult] : prof.factors)
        if (mult > 1) return false;
    return true;
}

bool is_stable(const BinaryForm& f) {
    // No linear factor of multiplicity >= n/2, i.e. 2 * max_mult < n.
    return 2 * multiplicity_profile(f).max_multiplicity() < f.degree();
}

BinaryForm divide_exact(const BinaryForm& f, const BinaryForm& g) {
    // Strip exact monomial factors x^s y^t so the dehomogenized division sees
    // the true degrees, then divide univariately over Q with exactness checks.
    auto strip = [](const BinaryForm& h, int& ypow, int& xpow) {
        const auto& cs = h.coeffs();
        size_t lo = 0, hi = cs.size();
        while (lo < hi && cs[lo] == 0) ++lo;    // leading zeros: powers of y
        while (hi > lo && cs[hi - 1] == 0) --hi;  // trailing zeros: powers of x
        ypow = static_cast<int>(lo);
        xpow = static_cast<int>(cs.size() - hi);
        return upoly::Poly(cs.rbegin() + static_cast<long>(cs.size() - hi),
                           cs.rend() - static_cast<long>(lo));
    };
    int fy = 0, fx = 0, gy = 0, gx = 0;
    upoly::Poly pf = strip(f, fy, fx);
    upoly::Poly pg = strip(g, gy, gx);
    int qx = fx - gx, qy = fy - gy;
    if (qx < 0 || qy < 0)
        throw DomainError(errkind::inexact_division, "divide_exact: monomial factor deficit");
    auto [q, ok] = upoly::div_exact(pf, pg);
    if (!ok)
        throw DomainError(errkind::inexact_division, "divide_exact: inexact form division");
    const int qdeg = static_cast<int>(q.size()) - 1 + qx + qy;
    std::vector<Int> out(static_cast<size_t>(qdeg) + 1, Int(0));
    // q is ascending in x for the dehomogenized part; rebuild descending with
    // the stripped monomial x^qx y^qy re-applied.
    for (size_t i = 0; i < q.size(); ++i) {
        // term q[i] * x^{i+qx} * y^{qdeg-(i+qx)}; descending index = qdeg-(i+qx)
        out[static_cast<size_t>(qdeg) - (i + static_cast<size_t>(qx))] = q[i];
    }
    return BinaryForm(std::move(out));
}

}  // namespace minred
