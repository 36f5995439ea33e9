#include "minred/covariant.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "minred/errors.hpp"

namespace minred {

namespace {

// log R and its gradient/Hessian in coordinates (t, s = log u). Evaluated in
// extended precision: near-coincident real roots make the double noise floor
// of the gradient graze the 1e-12 tolerance.
struct LogR {
    const FormRoots& roots;
    int n;
    using real = long double;

    real value(real t, real u) const {
        real v = 2.0L * std::log(static_cast<real>(roots.abs_lead)) - n * std::log(u);
        for (const auto& r : roots.finite) {
            real dx = static_cast<real>(r.real()) - t;
            real im = static_cast<real>(r.imag());
            v += std::log(dx * dx + im * im + u * u);
        }
        return v;
    }

    void gradient(real t, real u, real& gt, real& gs) const {
        gt = 0.0L;
        gs = -static_cast<real>(n);
        for (const auto& r : roots.finite) {
            real dx = static_cast<real>(r.real()) - t;
            real im = static_cast<real>(r.imag());
            real den = dx * dx + im * im + u * u;
            gt += -2.0L * dx / den;
            gs += 2.0L * u * u / den;
        }
    }

    void hessian(real t, real u, real& htt, real& hts, real& hss) const {
        htt = hts = hss = 0.0L;
        for (const auto& r : roots.finite) {
            real dx = static_cast<real>(r.real()) - t;
            real im = static_cast<real>(r.imag());
            real den = dx * dx + im * im + u * u;
            real den2 = den * den;
            htt += 2.0L / den - 4.0L * dx * dx / den2;
            hts += 4.0L * dx * u * u / den2;
            hss += 4.0L * u * u / den - 4.0L * u * u * u * u / den2;
        }
    }
};

}  // namespace

RootSphereData sphere_data(const FormRoots& roots) {
    RootSphereData out;
    for (const auto& r : roots.finite) {
        double n2 = std::norm(r);
        out.roots.push_back({r, 1.0});
        out.phis.push_back({2.0 * r.real() / (n2 + 1.0), 2.0 * r.imag() / (n2 + 1.0),
                            (n2 - 1.0) / (n2 + 1.0)});
    }
    for (int k = 0; k < roots.at_infinity; ++k) {
        out.roots.push_back({{0.0, 0.0}, 0.0});
        out.phis.push_back({0.0, 0.0, 1.0});
    }
    return out;
}

double r_value(const FormRoots& roots, const UpperHalfPoint& z) {
    double logv = 2.0 * std::log(roots.abs_lead) - roots.total() * std::log(z.u);
    for (const auto& r : roots.finite) {
        double dx = r.real() - z.t;
        logv += std::log(dx * dx + r.imag() * r.imag() + z.u * z.u);
    }
    return std::exp(logv);
}

double r_value(const BinaryForm& f, const UpperHalfPoint& z) {
    return r_value(form_roots(f), z);
}

double r_value(const RealForm& f, const UpperHalfPoint& z) {
    return r_value(form_roots(f), z);
}

CovariantResult covariant_point(const FormRoots& roots, int degree, double tol) {
    const int n = degree;
    // The stability requirement keeps the minimizer unique; callers check
    // is_stable before we get here, but a cheap structural guard remains.
    if (2 * roots.at_infinity >= n)
        throw DomainError(errkind::instability, "form is divisible by y^(n/2)");

    LogR f{roots, n};
    using real = LogR::real;

    // Start at the root barycenter heuristic; fall back to j.
    real t = 0.0L, u = 0.0L;
    if (!roots.finite.empty()) {
        for (const auto& r : roots.finite) {
            t += static_cast<real>(r.real());
            u += std::abs(static_cast<real>(r.imag()));
        }
        t /= static_cast<real>(roots.finite.size());
        u /= static_cast<real>(roots.finite.size());
    }
    if (!(u > 1e-12L)) {
        t = 0.0L;
        u = 1.0L;
    }

    real gt, gs;
    f.gradient(t, u, gt, gs);
    real gnorm = std::hypot(gt, gs);
    const int max_iter = 200;
    int iter = 0;
    for (; iter < max_iter && gnorm > tol; ++iter) {
        real htt, hts, hss;
        f.hessian(t, u, htt, hts, hss);
        real det = htt * hss - hts * hts;
        real dt, ds;
        bool newton_ok = det > 0.0L && htt > 0.0L;
        if (newton_ok) {
            dt = -(hss * gt - hts * gs) / det;
            ds = -(htt * gs - hts * gt) / det;
            if (dt * gt + ds * gs >= 0.0L) newton_ok = false;  // not a descent direction
        }
        if (!newton_ok) {
            dt = -gt;
            ds = -gs;
        }
        if (newton_ok && std::hypot(dt, ds) < 1e-6L) {
            // noise-floor regime: descent checks are dominated by rounding,
            // raw Newton steps contract quadratically
            t += dt;
            u *= std::exp(ds);
            f.gradient(t, u, gt, gs);
            gnorm = std::hypot(gt, gs);
            continue;
        }
        real f0 = f.value(t, u);
        real step = 1.0L;
        real nt = t, nu = u;
        for (int ls = 0; ls < 60; ++ls) {
            nt = t + step * dt;
            nu = u * std::exp(step * ds);
            if (std::isfinite(static_cast<double>(nu)) && nu > 0.0L &&
                f.value(nt, nu) <= f0 + 1e-4L * step * (dt * gt + ds * gs))
                break;
            step *= 0.5L;
        }
        t = nt;
        u = nu;
        f.gradient(t, u, gt, gs);
        gnorm = std::hypot(gt, gs);
    }
    if (gnorm > tol)
        throw DomainError(errkind::non_convergence,
                          "covariant point iteration did not reach tolerance");

    CovariantResult res;
    res.z = UpperHalfPoint(static_cast<double>(t), static_cast<double>(u));
    res.theta = r_value(roots, res.z);
    res.residual = static_cast<double>(gnorm);
    return res;
}

CovariantResult covariant_point(const BinaryForm& f, double tol) {
    if (f.degree() < 3)
        throw DomainError(errkind::degree_too_small, "covariant point needs degree >= 3");
    if (!is_stable(f))
        throw DomainError(errkind::instability, "form is not stable");
    return covariant_point(form_roots(f), f.degree(), tol);
}

RealForm recentered_form(const BinaryForm& f, const UpperHalfPoint& z) {
    const int n = f.degree();
    // F1 = F(x + t0 y, y), exact binomial expansion, then diag(u^1/2, u^-1/2).
    std::vector<double> f1(static_cast<size_t>(n) + 1, 0.0);
    std::vector<double> pow_t(static_cast<size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k) pow_t[static_cast<size_t>(k)] = pow_t[static_cast<size_t>(k - 1)] * z.t;
    // (x + t0 y)^{n-i} contributes binom(n-i, j) t0^j to y^{i+j}.
    std::vector<std::vector<double>> binom(static_cast<size_t>(n) + 1);
    for (int a = 0; a <= n; ++a) {
        binom[static_cast<size_t>(a)].assign(static_cast<size_t>(a) + 1, 1.0);
        for (int b = 1; b < a; ++b)
            binom[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                binom[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] +
                binom[static_cast<size_t>(a - 1)][static_cast<size_t>(b)];
    }
    for (int i = 0; i <= n; ++i) {
        double ai = f.coeff(i).get_d();
        if (ai == 0.0) continue;
        for (int jj = 0; jj <= n - i; ++jj)
            f1[static_cast<size_t>(i + jj)] +=
                ai * binom[static_cast<size_t>(n - i)][static_cast<size_t>(jj)] *
                pow_t[static_cast<size_t>(jj)];
    }
    // x -> u^{1/2} x, y -> u^{-1/2} y: coefficient of x^{n-i} y^i scales by
    // u^{(n-2i)/2}.
    RealForm out;
    out.coeffs.resize(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        out.coeffs[static_cast<size_t>(i)] =
            f1[static_cast<size_t>(i)] * std::pow(z.u, 0.5 * (n - 2 * i));
    return out;
}

FormRoots recenter_roots(const FormRoots& roots, const UpperHalfPoint& z) {
    FormRoots out;
    out.at_infinity = roots.at_infinity;
    out.abs_lead = 1.0;  // scaling is irrelevant for the quotient machinery
    out.finite.reserve(roots.finite.size());
    for (const auto& r : roots.finite) out.finite.push_back((r - z.t) / z.u);
    return out;
}

double eps_fallback_eta(const RootSphereData& sphere, int degree) {
    const auto& phis = sphere.phis;
    double maxcos = -1.0;
    for (size_t i = 0; i < phis.size(); ++i)
        for (size_t j = i + 1; j < phis.size(); ++j) {
            double c = dot(phis[i], phis[j]);
            if (c > 1.0 - 1e-10)
                throw DomainError(errkind::repeated_root,
                                  "eps fallback needs pairwise distinct root directions");
            maxcos = std::max(maxcos, c);
        }
    double eta = 1.0 - std::sqrt((maxcos + 1.0) / 2.0);
    return 0.5 * std::pow(eta, degree - 1);
}

double eps_fallback(const RootSphereData& sphere, int degree) {
    if (degree == 3) {
        // Lemma-backed exact value; still reject repeated roots.
        for (size_t i = 0; i < sphere.phis.size(); ++i)
            for (size_t j = i + 1; j < sphere.phis.size(); ++j)
                if (dot(sphere.phis[i], sphere.phis[j]) > 1.0 - 1e-10)
                    throw DomainError(errkind::repeated_root,
                                      "eps fallback needs pairwise distinct root directions");
        return 1.0;
    }
    return eps_fallback_eta(sphere, degree);
}

namespace {

// Each root contributes the sinusoid factor
//   f_k(psi) = cosh(delta) + rho_k sinh(delta) cos(psi - omega_k)
// on the real tangent circle (after absorbing the sign of the inner product
// into omega_k). rho_k <= 1 with equality only for real or infinite roots.
struct CircleFactor {
    double rho;
    double omega;
};

std::vector<CircleFactor> circle_factors(const RootSphereData& sphere) {
    std::vector<CircleFactor> out;
    out.reserve(sphere.phis.size());
    for (const Vec3& p : sphere.phis) {
        double rho = std::hypot(p.x, p.z);
        // factor = cosh - (p.x cos + p.z sin) sinh = cosh + rho cos(psi - omega)
        // with omega = atan2(-p.z, -p.x).
        out.push_back({std::min(rho, 1.0), std::atan2(-p.z, -p.x)});
    }
    return out;
}

double min_cos_over(double lo, double hi) {
    // minimum of cos on [lo, hi] (hi - lo < 2 pi): -1 if an odd multiple of pi
    // is inside, else the smaller endpoint value.
    double k = std::ceil((lo - M_PI) / (2.0 * M_PI));
    double odd = M_PI + 2.0 * M_PI * k;
    if (odd >= lo && odd <= hi) return -1.0;
    return std::min(std::cos(lo), std::cos(hi));
}

struct Cell {
    double center;
    double half;
    double lb;
};

double cell_lower_bound(const std::vector<CircleFactor>& fs, double ch, double sh,
                        double center, double half) {
    double lb = 1.0;
    for (const auto& f : fs) {
        double th = center - f.omega;
        lb *= ch + f.rho * sh * min_cos_over(th - half, th + half);
    }
    return lb;
}

double value_at(const std::vector<CircleFactor>& fs, double ch, double sh, double psi) {
    double v = 1.0;
    for (const auto& f : fs) v *= ch + f.rho * sh * std::cos(psi - f.omega);
    return v;
}

}  // namespace

double eps_profile(const RootSphereData& sphere, double delta, int threads,
                   double rel_slack, int base_cells) {
    if (delta == 0.0) return 1.0;
    if (delta < 0.0) throw std::invalid_argument("eps_profile: delta must be >= 0");
    const double ch = std::cosh(delta), sh = std::sinh(delta);
    std::vector<CircleFactor> fs = circle_factors(sphere);

    const int m = std::max(base_cells, 8);
    const double h = 2.0 * M_PI / m;
    std::vector<Cell> cells(static_cast<size_t>(m));
    double best_ub = std::numeric_limits<double>::infinity();

    auto fill = [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            double c = (i + 0.5) * h;
            cells[static_cast<size_t>(i)] = {c, 0.5 * h, cell_lower_bound(fs, ch, sh, c, 0.5 * h)};
        }
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        int per = (m + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * per, hi = std::min(m, lo + per);
            if (lo < hi) pool.emplace_back(fill, lo, hi);
        }
        for (auto& th : pool) th.join();
    } else {
        fill(0, m);
    }
    for (const Cell& c : cells) best_ub = std::min(best_ub, value_at(fs, ch, sh, c.center));

    // Adaptive refinement: split any cell whose certified bound is materially
    // below the best sampled value; the certified minimum is the final min lb.
    std::vector<Cell> work(cells.begin(), cells.end());
    const int max_rounds = 44;
    for (int round = 0; round < max_rounds; ++round) {
        std::vector<Cell> next;
        bool refined = false;
        for (const Cell& c : work) {
            if (c.lb >= best_ub * (1.0 - rel_slack)) {
                next.push_back(c);
                continue;
            }
            refined = true;
            for (int s : {-1, 1}) {
                double nc = c.center + s * 0.5 * c.half;
                double nh = 0.5 * c.half;
                next.push_back({nc, nh, cell_lower_bound(fs, ch, sh, nc, nh)});
                best_ub = std::min(best_ub, value_at(fs, ch, sh, nc));
            }
        }
        work = std::move(next);
        if (!refined) break;
    }
    double lb = std::numeric_limits<double>::infinity();
    for (const Cell& c : work) lb = std::min(lb, c.lb);
    // R(F0, .) has its global minimum at j, so the true profile is >= 1; the
    // certified value may only dip below through float noise.
    return std::max(lb, 1.0);
}

double eps_inverse_cosh(const RootSphereData& sphere, double bound_arg, int threads) {
    const double safety = 1.001;
    if (bound_arg <= 1.0) return safety;
    double lo = 0.0, hi = 0.5;
    int guard = 0;
    while (eps_profile(sphere, hi, threads) < bound_arg) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 40)
            throw DomainError(errkind::instability,
                              "eps profile does not reach the requested bound");
    }
    for (int it = 0; it < 80 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (eps_profile(sphere, mid, threads) >= bound_arg)
            hi = mid;
        else
            lo = mid;
    }
    return std::cosh(hi) * safety;
}

double eps_optimized_unsafe(const RootSphereData& sphere) {
    std::vector<CircleFactor> fs;
    for (const Vec3& p : sphere.phis) {
        double rho = std::hypot(p.x, p.z);
        fs.push_back({std::min(rho, 1.0), std::atan2(p.z, p.x)});
    }
    auto value = [&](double psi, double rho) {
        double v = 1.0;
        for (const auto& f : fs) v *= 1.0 + f.rho * std::cos(psi - f.omega) * rho;
        return v / (1.0 - rho * rho);
    };
    double best = std::numeric_limits<double>::infinity();
    double bpsi = 0.0, brho = 0.0;
    for (int i = 0; i < 256; ++i)
        for (int j = 0; j < 256; ++j) {
            double psi = 2.0 * M_PI * i / 256.0;
            double rho = j / 256.0;
            double v = value(psi, rho);
            if (v < best) {
                best = v;
                bpsi = psi;
                brho = rho;
            }
        }
    double hpsi = M_PI / 256.0, hrho = 0.5 / 256.0;
    for (int round = 0; round < 24; ++round) {
        for (double psi : {bpsi - hpsi, bpsi, bpsi + hpsi})
            for (double rho : {brho - hrho, brho, brho + hrho}) {
                if (rho < 0.0 || rho >= 1.0 - 1e-9) continue;
                double v = value(psi, rho);
                if (v < best) {
                    best = v;
                    bpsi = psi;
                    brho = rho;
                }
            }
        hpsi *= 0.5;
        hrho *= 0.5;
    }
    return best;
}

double r_quotient_formula(const RootSphereData& sphere, const UpperHalfPoint& z) {
    double ch = cosh_dist_to_j(z);
    if (ch <= 1.0) return 1.0;
    double sh = std::sqrt(ch * ch - 1.0);
    // unit tangent at j toward z: nu = (t, 0, (t^2+u^2-1)/2) / (u sinh d)
    double nx = z.t / (z.u * sh);
    double nz = (z.t * z.t + z.u * z.u - 1.0) / (2.0 * z.u * sh);
    double v = 1.0;
    for (const Vec3& p : sphere.phis) v *= ch - (nx * p.x + nz * p.z) * sh;
    return v;
}

}  // namespace minred
