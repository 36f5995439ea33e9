#include "minred/roots.hpp"

#include <algorithm>
#include <cmath>

#include "minred/errors.hpp"

namespace minred {

namespace {

using cplx = std::complex<double>;

cplx horner(const std::vector<double>& p, cplx z) {
    cplx v(0.0, 0.0);
    for (size_t i = p.size(); i-- > 0;) v = v * z + p[i];
    return v;
}

cplx horner_deriv(const std::vector<double>& p, cplx z) {
    cplx v(0.0, 0.0);
    for (size_t i = p.size(); i-- > 1;) v = v * z + static_cast<double>(i) * p[i];
    return v;
}

}  // namespace

std::vector<cplx> aberth_roots(const std::vector<double>& p) {
    const int n = static_cast<int>(p.size()) - 1;
    if (n <= 0) return {};
    if (n == 1) return {cplx(-p[0] / p[1], 0.0)};

    // Cauchy-style inclusion radius and centroid start circle.
    double lead = std::abs(p.back());
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(p[static_cast<size_t>(i)] / lead));
    radius = 1.0 + radius;
    cplx center(-p[static_cast<size_t>(n - 1)] / (p.back() * n), 0.0);

    std::vector<cplx> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double ang = 2.0 * M_PI * (k + 0.25) / n + 0.6180339887;  // detuned angles
        z[static_cast<size_t>(k)] = center + radius * cplx(std::cos(ang), std::sin(ang));
    }

    double scale = 0.0;
    for (double c : p) scale = std::max(scale, std::abs(c));

    const int max_iter = 500;
    bool converged = false;
    double best_step = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    for (int iter = 0; iter < max_iter && !converged; ++iter) {
        double max_step = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx zk = z[static_cast<size_t>(k)];
            cplx pv = horner(p, zk);
            cplx dv = horner_deriv(p, zk);
            if (std::abs(pv) == 0.0) continue;
            cplx newton = (dv != cplx(0.0, 0.0)) ? pv / dv : cplx(1e-3, 1e-3);
            cplx s(0.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (zk - z[static_cast<size_t>(j)]);
            cplx denom = 1.0 - newton * s;
            cplx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[static_cast<size_t>(k)] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(zk)));
        }
        if (max_step <= 1e-14) {
            converged = true;
            break;
        }
        // close root pairs dither at a noise floor above the step target;
        // once steps stop shrinking the iteration is done
        if (max_step < 0.5 * best_step) {
            best_step = max_step;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        if (stagnant >= 12 && max_step <= 1e-9) converged = true;
    }
    if (!converged)
        throw DomainError(errkind::degenerate_roots,
                          "root finder did not converge (degenerate or ill-conditioned form)");

    // Newton polish.
    for (auto& zk : z) {
        for (int it = 0; it < 4; ++it) {
            cplx dv = horner_deriv(p, zk);
            if (std::abs(dv) == 0.0) break;
            zk -= horner(p, zk) / dv;
        }
    }
    // A real polynomial has conjugate-paired roots; snap tiny imaginary parts
    // so downstream geometry sees genuinely real roots as real.
    for (auto& zk : z)
        if (std::abs(zk.imag()) < 1e-12 * (1.0 + std::abs(zk.real()))) zk = cplx(zk.real(), 0.0);
    return z;
}

FormRoots form_roots(const BinaryForm& f) {
    FormRoots out;
    MultiplicityProfile prof = multiplicity_profile(f);
    out.at_infinity = prof.infinity_multiplicity;

    // lead constant of the factorization: coefficient of x^{n-v} y^v.
    Int lead = f.coeff(prof.infinity_multiplicity);
    out.abs_lead = std::abs(lead.get_d());
    if (out.abs_lead == 0.0 || !std::isfinite(out.abs_lead))
        throw DomainError(errkind::degenerate_roots, "form coefficients overflow double range");

    for (const auto& [factor, mult] : prof.factors) {
        std::vector<double> fd;
        fd.reserve(factor.size());
        for (const Int& c : factor) fd.push_back(c.get_d());
        // exact zero roots: strip x | factor
        size_t zeros = 0;
        while (zeros < fd.size() && fd[zeros] == 0.0) ++zeros;
        for (size_t i = 0; i < zeros; ++i)
            for (int m = 0; m < mult; ++m) out.finite.emplace_back(0.0, 0.0);
        std::vector<double> core(fd.begin() + static_cast<long>(zeros), fd.end());
        for (const cplx& r : aberth_roots(core))
            for (int m = 0; m < mult; ++m) out.finite.push_back(r);
    }
    if (out.total() != f.degree())
        throw std::logic_error("form_roots: root count mismatch");
    return out;
}

FormRoots form_roots(const RealForm& f) {
    FormRoots out;
    double maxc = 0.0;
    for (double c : f.coeffs) maxc = std::max(maxc, std::abs(c));
    if (maxc == 0.0)
        throw std::invalid_argument("form_roots: zero form");
    size_t lead = 0;
    while (lead < f.coeffs.size() - 1 && std::abs(f.coeffs[lead]) < 1e-14 * maxc) ++lead;
    out.at_infinity = static_cast<int>(lead);
    out.abs_lead = std::abs(f.coeffs[lead]);
    std::vector<double> asc(f.coeffs.rbegin(), f.coeffs.rend() - static_cast<long>(lead));
    size_t zeros = 0;
    while (zeros < asc.size() - 1 && asc[zeros] == 0.0) ++zeros;
    for (size_t i = 0; i < zeros; ++i) out.finite.emplace_back(0.0, 0.0);
    std::vector<double> core(asc.begin() + static_cast<long>(zeros), asc.end());
    for (const auto& r : aberth_roots(core)) out.finite.push_back(r);
    return out;
}

}  // namespace minred
