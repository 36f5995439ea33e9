#include "minred/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "minred/errors.hpp"

namespace minred {

namespace {
constexpr double kBoundarySlack = 1e-9;

const Mat2& shift_matrix() {  // z -> z + 1
    static const Mat2 m(1, 1, 0, 1);
    return m;
}
const Mat2& invert_matrix() {  // z -> -1/z
    static const Mat2 m(0, -1, 1, 0);
    return m;
}

UpperHalfPoint invert_point(const UpperHalfPoint& z) {
    double n2 = z.t * z.t + z.u * z.u;
    return UpperHalfPoint(-z.t / n2, z.u / n2);
}
}  // namespace

std::pair<Mat2, UpperHalfPoint> to_fundamental_domain(const UpperHalfPoint& z0) {
    UpperHalfPoint z = z0;
    Mat2 m = Mat2::identity();  // z_current = m . z0
    for (int iter = 0; iter < 100000; ++iter) {
        if (std::abs(z.t) > 1e15)
            throw DomainError(errkind::non_convergence, "fundamental domain: point overflow");
        long long k = std::llround(z.t);
        if (k != 0) {
            z = UpperHalfPoint(z.t - static_cast<double>(k), z.u);
            m = Mat2(1, Int(static_cast<long>(-k)), 0, 1) * m;
        }
        if (z.t * z.t + z.u * z.u < 1.0 - kBoundarySlack) {
            z = invert_point(z);
            m = invert_matrix() * m;
            continue;
        }
        return {m.inverse(), z};
    }
    throw DomainError(errkind::non_convergence, "fundamental domain reduction did not settle");
}

std::vector<SearchNode> node_children(const SearchNode& node) {
    std::vector<SearchNode> out;
    using Edge = SearchNode::Edge;
    // (a) inversion, tested on the anchor representative (anti-cycling)
    double rt = std::abs(node.anchor.t) - 1.0;
    if (node.edge != Edge::S && rt * rt + node.anchor.u * node.anchor.u >= 1.0 - kBoundarySlack) {
        out.push_back({invert_point(node.point), invert_point(node.anchor),
                       node.gamma * invert_matrix().inverse(), Edge::S});
    }
    // (b) shift down z - 1
    if (node.edge != Edge::T) {
        out.push_back({UpperHalfPoint(node.point.t - 1.0, node.point.u),
                       UpperHalfPoint(node.anchor.t - 1.0, node.anchor.u),
                       node.gamma * shift_matrix(), Edge::Tinv});
    }
    // (c) shift up z + 1
    if (node.edge != Edge::Tinv) {
        out.push_back({UpperHalfPoint(node.point.t + 1.0, node.point.u),
                       UpperHalfPoint(node.anchor.t + 1.0, node.anchor.u),
                       node.gamma * shift_matrix().inverse(), Edge::T});
    }
    return out;
}

std::vector<SearchNode> expand_node(const SearchNode& node, double c) {
    std::vector<SearchNode> out;
    for (SearchNode& ch : node_children(node))
        if (cosh_dist_to_j(ch.point) <= c + kBoundarySlack) out.push_back(std::move(ch));
    return out;
}

OrbitSearchResult search_orbit(const UpperHalfPoint& z_red, const RootSphereData& recentered,
                               const OrbitObjective& objective, int threads) {
    OrbitSearchResult res;
    SearchStats& stats = res.stats;
    stats.z_form = z_red;

    Mat2 id = Mat2::identity();
    res.gamma = id;
    res.value = objective.value(id);
    std::vector<Int> best_tie = objective.tie_tuple(id);
    double c = eps_inverse_cosh(recentered, objective.bound_arg(res.value), threads);
    stats.initial_bound = c;
    stats.minimizer = z_red;

    struct QEntry {
        double dist;
        SearchNode node;
    };
    auto cmp = [](const QEntry& a, const QEntry& b) { return a.dist > b.dist; };
    std::priority_queue<QEntry, std::vector<QEntry>, decltype(cmp)> queue(cmp);
    queue.push({cosh_dist_to_j(z_red),
                SearchNode{z_red, UpperHalfPoint(0.0, 2.0), id, SearchNode::Edge::root}});

    std::uint64_t pops = 0;
    while (!queue.empty()) {
        if (++pops > 2000000)
            throw std::logic_error("search_orbit: node budget exceeded");
        QEntry e = queue.top();
        queue.pop();
        if (e.dist > c + kBoundarySlack) {
            // Monotone frontier: everything still queued is at least this far.
            stats.trace.push_back({e.node.point, e.node.gamma, false});
            while (!queue.empty()) {
                stats.trace.push_back({queue.top().node.point, queue.top().node.gamma, false});
                queue.pop();
            }
            break;
        }
        stats.trace.push_back({e.node.point, e.node.gamma, true});
        ++stats.nodes_expanded;

        Int val = objective.value(e.node.gamma);
        if (val < res.value) {
            res.value = val;
            res.gamma = e.node.gamma;
            best_tie = objective.tie_tuple(e.node.gamma);
            stats.minimizer = e.node.point;
            double cn = eps_inverse_cosh(recentered, objective.bound_arg(res.value), threads);
            c = std::min(c, cn);
        } else if (val == res.value) {
            std::vector<Int> tie = objective.tie_tuple(e.node.gamma);
            if (tie < best_tie || (tie == best_tie && e.node.gamma.lex_less(res.gamma))) {
                res.gamma = e.node.gamma;
                best_tie = std::move(tie);
                stats.minimizer = e.node.point;
            }
        }

        for (SearchNode& ch : node_children(e.node)) {
            double d = cosh_dist_to_j(ch.point);
            if (d <= c + kBoundarySlack)
                queue.push({d, std::move(ch)});
            else
                stats.trace.push_back({ch.point, ch.gamma, false});
        }
    }
    stats.final_bound = c;
    return res;
}

double bound_for(FormNorm norm, int degree, const Int& best, double theta,
                 const RootSphereData& recentered, int threads) {
    double b = best.get_d();
    double arg = std::ldexp(1.0, degree - 1) / theta;
    if (norm == FormNorm::euclidean)
        arg *= b;
    else
        arg *= (degree + 1) * b * b;
    return eps_inverse_cosh(recentered, std::max(arg, 1.0), threads);
}

FormReduction smallest_representative(const BinaryForm& f, FormNorm norm, int threads,
                                      double tol_z) {
    const int n = f.degree();
    if (n < 3)
        throw DomainError(errkind::degree_too_small, "degree below 3");
    if (!is_stable(f))
        throw DomainError(errkind::instability, "form is not stable");

    CovariantResult cov = covariant_point(form_roots(f), n, tol_z);
    auto [gamma0, z_guess] = to_fundamental_domain(cov.z);
    BinaryForm f_red = act(f, gamma0);

    // Recompute the covariant data on the reduced form; the recentered root
    // directions drive all eps bounds.
    FormRoots roots_red = form_roots(f_red);
    CovariantResult cov_red = covariant_point(roots_red, n, tol_z);
    (void)z_guess;
    RootSphereData recentered = sphere_data(recenter_roots(roots_red, cov_red.z));
    const double theta = cov_red.theta;

    OrbitObjective obj;
    obj.value = [&](const Mat2& g) {
        BinaryForm cand = act(f_red, g);
        return norm == FormNorm::euclidean ? size(cand) : height_inf(cand);
    };
    obj.tie_tuple = [&](const Mat2& g) { return normalize(act(f_red, g)).coeffs(); };
    if (norm == FormNorm::euclidean)
        obj.bound_arg = [n, theta](const Int& best) {
            return std::max(std::ldexp(best.get_d(), n - 1) / theta, 1.0);
        };
    else
        obj.bound_arg = [n, theta](const Int& best) {
            double b = best.get_d();
            return std::max(std::ldexp((n + 1) * b * b, n - 1) / theta, 1.0);
        };

    OrbitSearchResult found = search_orbit(cov_red.z, recentered, obj, threads);

    FormReduction out{gamma0 * found.gamma, gamma0, act(f_red, found.gamma), found.value,
                      std::move(found.stats)};
    return out;
}

}  // namespace minred
