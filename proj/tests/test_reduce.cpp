#include <doctest.h>

#include <cmath>
#include <random>

#include "minred/reduce.hpp"

using namespace minred;

namespace {

const BinaryForm& ex1() {
    static const BinaryForm f{-2, 2, 3, 127};
    return f;
}

// All SL(2,Z) matrices with entries bounded by `bound` in absolute value.
const std::vector<Mat2>& sl2_box(int bound) {
    static std::vector<Mat2> cache;
    static int cached_bound = -1;
    if (cached_bound != bound) {
        cache.clear();
        for (int a = -bound; a <= bound; ++a)
            for (int b = -bound; b <= bound; ++b)
                for (int c = -bound; c <= bound; ++c)
                    for (int d = -bound; d <= bound; ++d)
                        if (a * d - b * c == 1) cache.emplace_back(a, b, c, d);
        cached_bound = bound;
    }
    return cache;
}

BinaryForm random_squarefree(std::mt19937_64& rng, int degree, int bound) {
    std::uniform_int_distribution<long> coeff(-bound, bound);
    for (;;) {
        std::vector<Int> cs;
        bool nonzero = false;
        for (int i = 0; i <= degree; ++i) {
            cs.emplace_back(coeff(rng));
            nonzero = nonzero || cs.back() != 0;
        }
        if (!nonzero) continue;
        BinaryForm f(cs);
        if (is_squarefree(f) && is_stable(f)) return f;
    }
}

bool same_up_to_sign(const Mat2& g, const Mat2& h) { return g == h || g == -h; }

}  // namespace

TEST_CASE("fundamental domain reduction") {
    // Ex1's covariant point is already reduced
    auto [g1, z1] = to_fundamental_domain(UpperHalfPoint(0.17501, 3.99543));
    CHECK(g1 == Mat2::identity());
    CHECK(z1.t == doctest::Approx(0.17501));
    CHECK(z1.u == doctest::Approx(3.99543));

    auto [g2, z2] = to_fundamental_domain(UpperHalfPoint(0.6, 2.0));
    CHECK(g2 == Mat2(1, 1, 0, 1));
    CHECK(z2.t == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(z2.u == doctest::Approx(2.0).epsilon(1e-12));

    auto [g3, z3] = to_fundamental_domain(UpperHalfPoint(0.3, 0.5));
    CHECK(z3.t == doctest::Approx(2.0 / 17.0).epsilon(1e-9));
    CHECK(z3.u == doctest::Approx(25.0 / 17.0).epsilon(1e-9));
    UpperHalfPoint back = moebius(g3.inverse(), UpperHalfPoint(0.3, 0.5));
    CHECK(back.t == doctest::Approx(z3.t).epsilon(1e-9));
    CHECK(back.u == doctest::Approx(z3.u).epsilon(1e-9));
}

TEST_CASE("fundamental domain postconditions on random points") {
    std::mt19937_64 rng(11001);
    std::uniform_real_distribution<double> t(-20.0, 20.0), u(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        UpperHalfPoint z(t(rng), u(rng));
        auto [g, w] = to_fundamental_domain(z);
        CHECK(g.is_sl2());
        CHECK(std::abs(w.t) <= 0.5 + 1e-9);
        CHECK(w.t * w.t + w.u * w.u >= 1.0 - 1e-9);
        UpperHalfPoint back = moebius(g.inverse(), z);
        CHECK(cosh_dist(back, w) < 1.0 + 1e-9);
    }
}

TEST_CASE("node expansion rules") {
    SearchNode root{UpperHalfPoint(0.17, 3.99), UpperHalfPoint(0.0, 2.0), Mat2::identity(),
                    SearchNode::Edge::root};
    auto kids = expand_node(root, 1e9);
    CHECK(kids.size() == 3);

    SearchNode after_t = kids[2];
    CHECK(after_t.edge == SearchNode::Edge::T);
    for (const SearchNode& ch : expand_node(after_t, 1e9))
        CHECK(ch.edge != SearchNode::Edge::Tinv);

    CHECK(expand_node(root, 1.0000001).empty());
}

TEST_CASE("Ex1 Euclidean reduction") {
    FormReduction r = smallest_representative(ex1(), FormNorm::euclidean);
    CHECK(r.value == 8266);
    CHECK(normalize(r.reduced) == normalize(BinaryForm{-2, -22, -77, 43}));
    CHECK(same_up_to_sign(r.gamma, Mat2(1, 4, 0, 1)));
    CHECK(act(ex1(), r.gamma) == r.reduced);
    CHECK(r.stats.initial_bound >= 28.0049 / 1.001);
    CHECK(r.stats.initial_bound <= 28.0049 * 1.05);
    CHECK(r.stats.final_bound >= 14.3415 / 1.001);
    CHECK(r.stats.final_bound <= 14.3415 * 1.05);
    CHECK(r.stats.nodes_expanded <= 2 * 88);
}

TEST_CASE("Ex1 height reduction") {
    FormReduction r = smallest_representative(ex1(), FormNorm::max);
    CHECK(r.value == 58);
    CHECK(normalize(r.reduced) == normalize(BinaryForm{43, -52, -47, 58}));
    CHECK(r.stats.initial_bound >= 111.891 / 1.001);
    CHECK(r.stats.initial_bound <= 111.891 * 1.05);
    CHECK(r.stats.final_bound >= 23.3403 / 1.001);
    CHECK(r.stats.final_bound <= 23.3403 * 1.05);
    CHECK(r.stats.nodes_expanded <= 2 * 140);
}

TEST_CASE("bound_for reproduces the Ex1 bound pairs") {
    CovariantResult cov = covariant_point(ex1());
    RootSphereData sphere = sphere_data(recenter_roots(form_roots(ex1()), cov.z));
    auto window = [](double c, double paper) {
        CHECK(c >= paper / 1.001);
        CHECK(c <= paper * 1.05);
    };
    window(bound_for(FormNorm::euclidean, 3, Int(16146), cov.theta, sphere), 28.0049);
    window(bound_for(FormNorm::euclidean, 3, Int(8266), cov.theta, sphere), 14.3415);
    window(bound_for(FormNorm::max, 3, Int(127), cov.theta, sphere), 111.891);
    window(bound_for(FormNorm::max, 3, Int(58), cov.theta, sphere), 23.3403);
    CHECK(bound_for(FormNorm::euclidean, 3, Int(1), 8.0, sphere) <= 1.001);
}

TEST_CASE("monotone frontier and pruning soundness on Ex1") {
    FormReduction r = smallest_representative(ex1(), FormNorm::euclidean);
    BinaryForm f_red = act(ex1(), r.gamma0);
    double last = 0.0;
    for (const NodeRecord& n : r.stats.trace) {
        if (!n.expanded) continue;
        double d = cosh_dist_to_j(n.point);
        CHECK(d >= last - 1e-9);
        last = d;
    }
    for (const NodeRecord& n : r.stats.trace) {
        if (n.expanded) continue;
        CHECK(size(act(f_red, n.gamma)) > r.value);
    }
}

TEST_CASE("idempotence") {
    FormReduction r = smallest_representative(ex1(), FormNorm::euclidean);
    FormReduction again = smallest_representative(r.reduced, FormNorm::euclidean);
    CHECK(again.value == r.value);
    CHECK(same_up_to_sign(again.gamma, Mat2::identity()));
}

TEST_CASE("already-minimal form with tight bound returns the identity") {
    BinaryForm cube{1, 0, 0, -1};  // z(F) = j, theta = 8, size 2
    FormReduction r = smallest_representative(cube, FormNorm::euclidean);
    CHECK(r.value == 2);
    CHECK(same_up_to_sign(r.gamma, Mat2::identity()));
}

TEST_CASE("search minimum matches the entry-bounded brute force") {
    std::mt19937_64 rng(11002);
    for (int trial = 0; trial < 5; ++trial) {
        BinaryForm f = random_squarefree(rng, 3, 20);
        for (FormNorm norm : {FormNorm::euclidean, FormNorm::max}) {
            FormReduction r = smallest_representative(f, norm);
            Int best = norm == FormNorm::euclidean ? size(f) : height_inf(f);
            for (const Mat2& g : sl2_box(10)) {
                BinaryForm cand = act(f, g);
                Int v = norm == FormNorm::euclidean ? size(cand) : height_inf(cand);
                if (v < best) best = v;
            }
            CHECK(r.value == best);
            CHECK(r.value <= best);
        }
    }
}

TEST_CASE("search nodes keep point = gamma^{-1} . z(F)") {
    FormReduction r = smallest_representative(ex1(), FormNorm::euclidean);
    for (const NodeRecord& n : r.stats.trace) {
        UpperHalfPoint mapped = moebius(n.gamma.inverse(), r.stats.z_form);
        CHECK(cosh_dist(mapped, n.point) < 1.0 + 1e-9);
    }
}

TEST_CASE("corner form xy(x-y) reduces without cycling") {
    // the covariant point sits exactly on the fundamental-domain corner,
    // where the unanchored inversion rule is known to cycle
    BinaryForm f{0, 1, -1, 0};
    CovariantResult cov = covariant_point(f);
    CHECK(cov.z.t == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cov.z.u == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
    FormReduction r = smallest_representative(f, FormNorm::euclidean);
    CHECK(r.value == 2);
    CHECK(r.stats.nodes_expanded < 200);
    for (auto g : {Mat2(1, 7, 0, 1), Mat2(3, -4, 2, -3), Mat2(5, 2, 2, 1)}) {
        FormReduction rd = smallest_representative(act(f, g), FormNorm::euclidean);
        CHECK(rd.value == 2);
        CHECK(normalize(rd.reduced) == normalize(f));
    }
}

TEST_CASE("large shears reduce back to the Ex1 minimum") {
    BinaryForm sheared = act(ex1(), Mat2(1, 50, 0, 1));
    CHECK(height_inf(sheared) == 244723);
    FormReduction r = smallest_representative(sheared, FormNorm::euclidean);
    CHECK(r.value == 8266);
    CHECK(normalize(r.reduced) == normalize(BinaryForm{-2, -22, -77, 43}));
    CHECK(r.stats.nodes_expanded <= 2 * 88);
}
