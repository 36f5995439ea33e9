#include "minred/minimal.hpp"

#include <algorithm>
#include <optional>

#include "minred/errors.hpp"
#include "minred/factor.hpp"
#include "minred/pipeline.hpp"

namespace minred {

namespace {

// Conjugate and remove the full integer content (which p-normalizes the model
// at every prime at once); sign fixed jointly.
EndoModel conj_normalized(const EndoModel& f, const Mat2& gamma) {
    return conjugate(f, gamma);  // conjugate() already normalizes
}

int vres(const EndoModel& f, const Int& p) { return valuation(model_resultant(f), p); }

// Back-edge bookkeeping: after stepping by (p a; 0 1) the return direction is
// (1 0; 0 p); after (1 0; 0 p) it is (p 0; 0 1).
Mat2 back_edge(const Mat2& step, const Int& p) {
    if (step.a == 1) return Mat2(Int(p), Int(0), Int(0), Int(1));
    return Mat2(Int(1), Int(0), Int(0), Int(p));
}

// gamma * gamma' lies in p GL(2,Z_p) exactly when p divides all entries (the
// determinants are both exactly p); that is the retracing test of the
// equal-valuation walk.
bool retraces(const Mat2& incoming, const Mat2& step, const Int& p) {
    Mat2 prod = incoming * step;
    return mpz_divisible_p(prod.a.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(prod.b.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(prod.c.get_mpz_t(), p.get_mpz_t()) &&
           mpz_divisible_p(prod.d.get_mpz_t(), p.get_mpz_t());
}

}  // namespace

std::vector<Mat2> neighbor_set(const Int& p) {
    std::vector<Mat2> out;
    out.emplace_back(Int(1), Int(0), Int(0), Int(p));
    for (Int a = 0; a < p; ++a) out.emplace_back(Int(p), Int(a), Int(0), Int(1));
    return out;
}

std::pair<EndoModel, int> p_normalize(const EndoModel& f, const Int& p) {
    int e1 = -1;
    for (const Int& c : f.concat_coeffs()) {
        if (c == 0) continue;
        int v = valuation(c, p);
        e1 = (e1 < 0) ? v : std::min(e1, v);
        if (e1 == 0) break;
    }
    if (e1 <= 0) return {f, 0};
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e1));
    auto scale = [&](const BinaryForm& h) {
        std::vector<Int> cs;
        cs.reserve(h.coeffs().size());
        for (const Int& c : h.coeffs()) cs.push_back(c / q);
        return BinaryForm(std::move(cs));
    };
    return {EndoModel(scale(f.num), scale(f.den)), e1};
}

PAdicContext p_context(const EndoModel& f, const Int& p) {
    auto [g, e1] = p_normalize(f, p);
    (void)e1;
    return PAdicContext{p, g, vres(g, p)};
}

std::pair<EndoModel, Mat2> p_minimal_model(const EndoModel& f0, const Int& p) {
    EndoModel f = normalize_model(f0);
    const int d = f.degree();
    const int certify_below = (d % 2 == 0) ? d : 2 * d;
    Mat2 gamma0 = Mat2::identity();
    int vcur = vres(f, p);
    std::optional<Mat2> excluded;
    const int max_rounds = vcur + 2;  // each accepted step strictly lowers vcur
    for (int guard = 0; guard < max_rounds; ++guard) {
        if (vcur < certify_below) break;  // edge increments make descent impossible
        bool moved = false;
        for (const Mat2& g : neighbor_set(p)) {
            if (excluded && g == *excluded) continue;
            EndoModel cand = conj_normalized(f, g);
            int v = vres(cand, p);
            if (v < vcur) {
                f = std::move(cand);
                vcur = v;
                gamma0 = gamma0 * g;
                excluded = back_edge(g, p);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return {std::move(f), std::move(gamma0)};
}

OrbitSet all_p_orbits(const EndoModel& f0, const Int& p) {
    auto [fmin, gamma0] = p_minimal_model(f0, p);
    const int v0 = vres(fmin, p);
    OrbitSet out;
    out.representatives.emplace_back(fmin, gamma0);

    std::vector<Mat2> level;
    for (const Mat2& g : neighbor_set(p))
        if (vres(conj_normalized(fmin, g), p) == v0) level.push_back(g);
    if (level.size() > 2)
        throw std::logic_error("all_p_orbits: more than two equal-valuation directions");

    for (const Mat2& start : level) {
        EndoModel cur = conj_normalized(fmin, start);
        Mat2 acc = gamma0 * start;
        Mat2 incoming = start;
        for (int guard = 0; guard < 100000; ++guard) {
            out.representatives.emplace_back(cur, acc);
            std::vector<Mat2> next;
            for (const Mat2& g : neighbor_set(p)) {
                if (retraces(incoming, g, p)) continue;
                if (vres(conj_normalized(cur, g), p) == v0) next.push_back(g);
            }
            if (next.size() > 1)
                throw std::logic_error("all_p_orbits: equal-valuation path branches");
            if (next.empty()) break;
            cur = conj_normalized(cur, next[0]);
            acc = acc * next[0];
            incoming = next[0];
        }
    }
    return out;
}

OrbitSet all_minimal_orbits(const EndoModel& f0) {
    EndoModel f = normalize_model(f0);
    Int res = abs(model_resultant(f));
    if (res == 0)
        throw DomainError(errkind::zero_resultant, "model has vanishing resultant");

    // Each prime's equal-valuation path is walked from every accumulated
    // representative: the earlier accumulated matrices permute the p-adic
    // tree directions, so transition matrices cannot be shared across
    // representatives.
    OrbitSet reps;
    reps.representatives.emplace_back(f, Mat2::identity());
    for (const auto& [p, e] : factorize(res)) {
        (void)e;
        OrbitSet next;
        for (const auto& [g, acc] : reps.representatives) {
            for (auto& [h, delta] : all_p_orbits(g, p).representatives)
                next.representatives.emplace_back(std::move(h), acc * delta);
        }
        reps = std::move(next);
    }
    return reps;
}

std::pair<EndoModel, Mat2> global_minimal_model(const EndoModel& f0) {
    EndoModel f = normalize_model(f0);
    Int res = abs(model_resultant(f));
    if (res == 0)
        throw DomainError(errkind::zero_resultant, "model has vanishing resultant");
    Mat2 acc = Mat2::identity();
    for (const auto& [p, e] : factorize(res)) {
        (void)e;
        auto [g, gamma] = p_minimal_model(f, p);
        f = std::move(g);
        acc = acc * gamma;
    }
    return {std::move(f), std::move(acc)};
}

ReducedModel reduced_model(const EndoModel& f, int threads, double tol_z) {
    OrbitSet orbits = all_minimal_orbits(f);
    ReducedModelReport report;
    std::optional<size_t> best;
    for (const auto& [g, gamma] : orbits.representatives) {
        EndoReduction red = reduced_conjugate(g, {}, threads, tol_z);
        report.orbits.push_back({g, gamma, red.reduced, red.gamma, red.height,
                                 std::move(red.stats)});
        const auto& row = report.orbits.back();
        if (!best) {
            best = report.orbits.size() - 1;
            continue;
        }
        const auto& cur = report.orbits[*best];
        if (row.height < cur.height ||
            (row.height == cur.height &&
             row.reduced.concat_coeffs() < cur.reduced.concat_coeffs())) {
            best = report.orbits.size() - 1;
        }
    }
    report.winner = *best;
    const auto& win = report.orbits[report.winner];
    return ReducedModel{win.reduced, win.orbit_gamma * win.reduce_gamma, std::move(report)};
}

}  // namespace minred
