#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "minred/dynamics.hpp"
#include "minred/errors.hpp"

namespace minred {

namespace {

// Sparse multivariate polynomial over Z in the 2(d+1) generic model
// coefficients; exponent vectors ordered lexicographically (multiplicative,
// so greedy leading-term reduction performs exact division).
struct MPoly {
    using Expo = std::vector<unsigned char>;
    std::map<Expo, Int> terms;

    static MPoly variable(int nvars, int idx) {
        MPoly p;
        Expo e(static_cast<size_t>(nvars), 0);
        e[static_cast<size_t>(idx)] = 1;
        p.terms[e] = 1;
        return p;
    }

    static MPoly constant(int nvars, Int c) {
        MPoly p;
        if (c != 0) p.terms[Expo(static_cast<size_t>(nvars), 0)] = std::move(c);
        return p;
    }

    bool zero() const { return terms.empty(); }

    void add_term(const Expo& e, const Int& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (c != 0) terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, -c);
        return *this;
    }

    MPoly operator*(const MPoly& o) const {
        MPoly r;
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                Expo e(e1.size());
                for (size_t i = 0; i < e.size(); ++i)
                    e[i] = static_cast<unsigned char>(e1[i] + e2[i]);
                r.add_term(e, c1 * c2);
            }
        return r;
    }

    /// Exact division; throws on inexactness.
    MPoly divided_by(const MPoly& d) const {
        if (d.zero()) throw std::logic_error("MPoly: division by zero");
        MPoly r = *this, q;
        const auto& [de, dc] = *d.terms.rbegin();
        while (!r.zero()) {
            const auto& [re, rc] = *r.terms.rbegin();
            Expo e(re.size());
            for (size_t i = 0; i < e.size(); ++i) {
                if (re[i] < de[i])
                    throw DomainError(errkind::inexact_division, "generic form division inexact");
                e[i] = static_cast<unsigned char>(re[i] - de[i]);
            }
            if (mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t()) == 0)
                throw DomainError(errkind::inexact_division, "generic form division inexact");
            Int c;
            mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
            MPoly t;
            t.terms[e] = c;
            q += t;
            r -= t * d;
        }
        return q;
    }

    int total_degree_uniform() const {
        int deg = -1;
        for (const auto& [e, c] : terms) {
            int s = 0;
            for (unsigned char x : e) s += x;
            if (deg == -1) deg = s;
            else if (deg != s)
                throw std::logic_error("MPoly: non-homogeneous coefficient polynomial");
        }
        return deg;
    }

    Int l1_norm() const {
        Int s = 0;
        for (const auto& [e, c] : terms) s += abs(c);
        return s;
    }
};

// Binary form in (x, y) whose coefficients are MPoly values, descending in x.
using GForm = std::vector<MPoly>;

GForm gform_mul(const GForm& a, const GForm& b) {
    GForm r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

GForm gform_compose(int nvars, const GForm& outer, const GForm& a, const GForm& b) {
    const size_t n = outer.size() - 1;
    std::vector<GForm> pa(n + 1), pb(n + 1);
    pa[0] = pb[0] = GForm{MPoly::constant(nvars, Int(1))};
    for (size_t k = 1; k <= n; ++k) {
        pa[k] = gform_mul(pa[k - 1], a);
        pb[k] = gform_mul(pb[k - 1], b);
    }
    GForm r((a.size() - 1) * n + 1);
    for (size_t i = 0; i <= n; ++i) {
        if (outer[i].zero()) continue;
        GForm term = gform_mul(pa[n - i], pb[i]);
        for (size_t j = 0; j < term.size(); ++j) {
            if (term[j].zero()) continue;
            r[j] += outer[i] * term[j];
        }
    }
    return r;
}

GForm gform_divide_exact(const GForm& num, const GForm& den) {
    if (num.size() < den.size()) throw std::logic_error("gform division: degree deficit");
    GForm quo(num.size() - den.size() + 1);
    GForm rem = num;
    for (size_t i = 0; i < quo.size(); ++i) {
        MPoly q = rem[i].divided_by(den[0]);
        quo[i] = q;
        if (!q.zero())
            for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= q * den[j];
    }
    for (const MPoly& c : rem)
        if (!c.zero())
            throw DomainError(errkind::inexact_division, "generic dynatomic division has remainder");
    return quo;
}

// y F - x G for GForms of equal length.
GForm gform_period(const GForm& f, const GForm& g) {
    GForm r(f.size() + 1);
    for (size_t i = 0; i < f.size(); ++i) r[i + 1] += f[i];
    for (size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
    return r;
}

std::vector<int> divisors(int m) {
    std::vector<int> out;
    for (int k = 1; k <= m; ++k)
        if (m % k == 0) out.push_back(k);
    return out;
}

int moebius_mu(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

std::string cache_key(int d, int m, PhiVariant v) {
    return std::to_string(d) + "," + std::to_string(m) + "," +
           (v == PhiVariant::full ? "full" : "dynatomic");
}

}  // namespace

SizeBoundConstants generic_constants(int d, int m, PhiVariant variant) {
    if (d < 2 || m < 1)
        throw std::invalid_argument("generic_constants: need d >= 2, m >= 1");
    double comp = std::pow(static_cast<double>(d), m);
    if (comp > 16.5)
        throw DomainError(errkind::unsupported_constants,
                          "generic constants computation out of supported range");
    const int nvars = 2 * (d + 1);
    GForm f(static_cast<size_t>(d) + 1), g(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
        f[static_cast<size_t>(i)] = MPoly::variable(nvars, i);
        g[static_cast<size_t>(i)] = MPoly::variable(nvars, d + 1 + i);
    }

    auto iterate_to = [&](int mm) {
        GForm fm = f, gm = g;
        for (int i = 1; i < mm; ++i) {
            fm = gform_compose(nvars, fm, f, g);
            gm = gform_compose(nvars, gm, f, g);
        }
        return std::pair{fm, gm};
    };

    GForm phi;
    if (variant == PhiVariant::full) {
        auto [fm, gm] = iterate_to(m);
        phi = gform_period(fm, gm);
    } else {
        std::vector<GForm> nums, dens;
        for (int k : divisors(m)) {
            int mu = moebius_mu(m / k);
            if (mu == 0) continue;
            auto [fk, gk] = iterate_to(k);
            (mu > 0 ? nums : dens).push_back(gform_period(fk, gk));
        }
        phi = nums.at(0);
        for (size_t i = 1; i < nums.size(); ++i) phi = gform_mul(phi, nums[i]);
        for (const GForm& dd : dens) phi = gform_divide_exact(phi, dd);
    }

    // s(f) = sum_i P_i^2 expanded; the triangle inequality on s gives
    // C = ||s||_1 (cross terms may cancel, so this beats sum_i ||P_i||_1^2).
    SizeBoundConstants out;
    out.variant = variant;
    out.d = d;
    out.m = m;
    MPoly s;
    int deg = -1;
    for (const MPoly& p : phi) {
        if (p.zero()) continue;
        int pd = p.total_degree_uniform();
        if (deg == -1) deg = pd;
        else if (deg != pd)
            throw std::logic_error("generic_constants: mixed homogeneity degrees");
        s += p * p;
    }
    out.C = s.l1_norm();
    out.k = s.total_degree_uniform();
    return out;
}

SizeBoundConstants constants_for(int d, int m, PhiVariant variant) {
    if (m == 1) {
        // C_{d,1} = C*_{d,1} = 4d + 2, k = 2 for every degree.
        return SizeBoundConstants{Int(4 * d + 2), 2, variant, d, 1};
    }
    struct Entry {
        int d, m;
        PhiVariant v;
        long c;
        int k;
    };
    static const Entry table[] = {
        {2, 2, PhiVariant::full, 322, 6},      {2, 2, PhiVariant::dynatomic, 43, 4},
        {2, 3, PhiVariant::dynatomic, 106459, 12}, {3, 2, PhiVariant::full, 18044, 8},
        {3, 2, PhiVariant::dynatomic, 1604, 6},
    };
    for (const Entry& e : table)
        if (e.d == d && e.m == m && e.v == variant)
            return SizeBoundConstants{Int(e.c), e.k, variant, d, m};

    static std::mutex mu;
    static std::map<std::string, SizeBoundConstants> memo;
    std::string key = cache_key(d, m, variant);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    const char* cache_path = std::getenv("MINRED_CONST_CACHE");
    if (cache_path) {
        std::ifstream in(cache_path);
        if (in) {
            auto j = nlohmann::json::parse(in, nullptr, false);
            if (!j.is_discarded() && j.contains(key)) {
                SizeBoundConstants out{Int(j[key]["C"].get<std::string>()),
                                       j[key]["k"].get<int>(), variant, d, m};
                std::lock_guard<std::mutex> lock(mu);
                memo[key] = out;
                return out;
            }
        }
    }

    SizeBoundConstants out = generic_constants(d, m, variant);
    {
        std::lock_guard<std::mutex> lock(mu);
        memo[key] = out;
    }
    if (cache_path) {
        nlohmann::json j;
        {
            std::ifstream in(cache_path);
            if (in) {
                auto prev = nlohmann::json::parse(in, nullptr, false);
                if (!prev.is_discarded()) j = prev;
            }
        }
        j[key] = {{"C", out.C.get_str()}, {"k", out.k}};
        std::ofstream outf(cache_path);
        outf << j.dump(2) << "\n";
    }
    return out;
}

}  // namespace minred
