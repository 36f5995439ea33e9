#include "minred/factor.hpp"

#include <stdexcept>

#include "minred/errors.hpp"

namespace minred {

namespace {

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

// Brent-variant Pollard rho; n odd composite, not a prime power obstacle.
Int pollard_brent(const Int& n) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(2463534242UL);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int y = rng.get_z_range(n - 3) + 1;
        Int c = rng.get_z_range(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int rk = r - k;
                Int lim = std::min(m, rk);
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
    throw DomainError(errkind::factorization_failure, "pollard rho failed to split cofactor");
}

void factor_into(Int n, std::map<Int, int>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 128)
        throw DomainError(errkind::factorization_failure,
                          "composite cofactor exceeds 128 bits");
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::map<Int, int> factorize(Int n) {
    if (n <= 0) throw std::invalid_argument("factorize: need n > 0");
    std::map<Int, int> out;
    for (long p = 2; p <= 1000000 && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            ++out[Int(p)];
            n /= static_cast<unsigned long>(p);
        }
    }
    if (n > 1 && n <= Int("1000000000000")) {
        // below the trial bound squared: what remains is prime
        ++out[n];
        return out;
    }
    factor_into(n, out);
    return out;
}

int valuation(Int x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation: zero input");
    int v = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace minred
