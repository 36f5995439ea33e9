#include "minred/dynamics.hpp"

#include <algorithm>
#include <sstream>

#include "minred/errors.hpp"

namespace minred {

EndoModel::EndoModel(BinaryForm f, BinaryForm g) : num(std::move(f)), den(std::move(g)) {
    if (num.degree() != den.degree())
        throw std::invalid_argument("EndoModel: degrees must match");
    if (num.degree() < 2)
        throw DomainError(errkind::degree_too_small, "endomorphism degree must be >= 2");
    if (resultant(num, den) == 0)
        throw DomainError(errkind::zero_resultant, "model has vanishing resultant");
}

std::vector<Int> EndoModel::concat_coeffs() const {
    std::vector<Int> out = num.coeffs();
    out.insert(out.end(), den.coeffs().begin(), den.coeffs().end());
    return out;
}

std::string EndoModel::str() const {
    return "[" + num.str() + " : " + den.str() + "]";
}

EndoModel normalize_model(const EndoModel& f) {
    Int g = 0;
    for (const Int& c : f.concat_coeffs())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (const Int& c : f.concat_coeffs()) {
        if (c == 0) continue;
        if (c < 0) g = -g;
        break;
    }
    auto scale = [&](const BinaryForm& h) {
        std::vector<Int> cs;
        cs.reserve(h.coeffs().size());
        for (const Int& c : h.coeffs()) cs.push_back(c / g);
        return BinaryForm(std::move(cs));
    };
    return EndoModel(scale(f.num), scale(f.den));
}

Int model_resultant(const EndoModel& f) { return resultant(f.num, f.den); }

Int model_height(const EndoModel& f) {
    return std::max(height_inf(f.num), height_inf(f.den));
}

EndoModel conjugate(const EndoModel& f, const Mat2& gamma) {
    require_nonsingular(gamma, "conjugate");
    BinaryForm fs = act(f.num, gamma);
    BinaryForm gs = act(f.den, gamma);
    auto comb = [&](const Int& cf, const Int& cg) {
        std::vector<Int> cs(fs.coeffs().size());
        for (size_t i = 0; i < cs.size(); ++i)
            cs[i] = cf * fs.coeffs()[i] + cg * gs.coeffs()[i];
        return cs;
    };
    std::vector<Int> top = comb(gamma.d, -gamma.b);
    std::vector<Int> bot = comb(-gamma.c, gamma.a);
    return normalize_model(EndoModel(BinaryForm(std::move(top)), BinaryForm(std::move(bot))));
}

std::pair<BinaryForm, BinaryForm> iterate(const EndoModel& f, int m) {
    if (m < 1) throw std::invalid_argument("iterate: m must be >= 1");
    BinaryForm fm = f.num, gm = f.den;
    for (int i = 1; i < m; ++i) {
        fm = compose(fm, f.num, f.den);
        gm = compose(gm, f.num, f.den);
    }
    return {std::move(fm), std::move(gm)};
}

namespace {

// y F_m - x G_m without normalization (the Prop-4 object).
BinaryForm period_form_raw(const BinaryForm& fm, const BinaryForm& gm) {
    const size_t len = fm.coeffs().size() + 1;
    std::vector<Int> cs(len, Int(0));
    for (size_t i = 0; i < fm.coeffs().size(); ++i) cs[i + 1] += fm.coeffs()[i];
    for (size_t i = 0; i < gm.coeffs().size(); ++i) cs[i] -= gm.coeffs()[i];
    return BinaryForm(std::move(cs));
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

BinaryForm dynatomic_form_raw(const EndoModel& f, int m) {
    std::vector<BinaryForm> nums, dens;
    for (int k : divisors(m)) {
        int mu = moebius_mu(m / k);
        if (mu == 0) continue;
        auto [fk, gk] = iterate(f, k);
        BinaryForm phi = period_form_raw(fk, gk);
        (mu > 0 ? nums : dens).push_back(std::move(phi));
    }
    if (nums.empty()) throw std::logic_error("dynatomic: empty numerator");
    BinaryForm num = nums[0];
    for (size_t i = 1; i < nums.size(); ++i) num = mul(num, nums[i]);
    for (const BinaryForm& d : dens) num = divide_exact(num, d);
    return num;
}

}  // namespace

BinaryForm period_form(const EndoModel& f, int m) {
    auto [fm, gm] = iterate(f, m);
    return normalize(period_form_raw(fm, gm));
}

BinaryForm dynatomic_form(const EndoModel& f, int m) {
    return normalize(dynatomic_form_raw(f, m));
}

EndoReduction reduced_conjugate(const EndoModel& f0, std::optional<int> forced_m, int threads,
                                double tol_z) {
    EndoModel f = normalize_model(f0);
    const int d = f.degree();

    // Phi selection: first stable auxiliary form of degree >= 3.
    std::vector<std::pair<int, PhiVariant>> order;
    if (forced_m) {
        if (*forced_m == 1)
            order = {{1, PhiVariant::full}};
        else
            order = {{*forced_m, PhiVariant::dynatomic}, {*forced_m, PhiVariant::full}};
    } else {
        order = {{1, PhiVariant::full},
                 {2, PhiVariant::dynatomic},
                 {2, PhiVariant::full},
                 {3, PhiVariant::dynatomic}};
    }
    std::optional<BinaryForm> phi;
    int phi_m = 0;
    PhiVariant phi_variant = PhiVariant::full;
    for (auto [m, variant] : order) {
        BinaryForm cand = [&] {
            if (variant == PhiVariant::full) {
                auto [fm, gm] = iterate(f, m);
                return period_form_raw(fm, gm);
            }
            return dynatomic_form_raw(f, m);
        }();
        if (cand.degree() >= 3 && is_stable(cand)) {
            phi = std::move(cand);
            phi_m = m;
            phi_variant = variant;
            break;
        }
    }
    if (!phi)
        throw DomainError(errkind::no_stable_form,
                          "no stable period or dynatomic form of degree >= 3 found");

    SizeBoundConstants consts = constants_for(d, phi_m, phi_variant);
    const int n_phi = phi->degree();

    CovariantResult cov = covariant_point(form_roots(*phi), n_phi, tol_z);
    auto [gamma0, z_guess] = to_fundamental_domain(cov.z);
    (void)z_guess;
    EndoModel f_red = conjugate(f, gamma0);
    BinaryForm phi_red = act(*phi, gamma0);

    FormRoots roots_red = form_roots(phi_red);
    CovariantResult cov_red = covariant_point(roots_red, n_phi, tol_z);
    RootSphereData recentered = sphere_data(recenter_roots(roots_red, cov_red.z));
    const double theta = cov_red.theta;
    const double cfac = consts.C.get_d();
    const int k = consts.k;

    OrbitObjective obj;
    obj.value = [&](const Mat2& g) { return model_height(conjugate(f_red, g)); };
    obj.tie_tuple = [&](const Mat2& g) { return conjugate(f_red, g).concat_coeffs(); };
    obj.bound_arg = [n_phi, theta, cfac, k](const Int& best) {
        double b = std::pow(best.get_d(), k);
        return std::max(std::ldexp(cfac * b, n_phi - 1) / theta, 1.0);
    };

    OrbitSearchResult found = search_orbit(cov_red.z, recentered, obj, threads);

    EndoReduction out{gamma0 * found.gamma, conjugate(f_red, found.gamma), found.value,
                      std::move(found.stats), phi_m, phi_variant};
    return out;
}

}  // namespace minred
