#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "minred/covariant.hpp"
#include "minred/forms.hpp"
#include "minred/halfplane.hpp"
#include "minred/mat2.hpp"

namespace minred {

/// Shift-and-invert reduction: returns (gamma0, z') with z' = gamma0^{-1}.z in
/// the standard fundamental domain {|t| <= 1/2, t^2 + u^2 >= 1} (boundary
/// slack 1e-9) and gamma0 in SL(2,Z).
std::pair<Mat2, UpperHalfPoint> to_fundamental_domain(const UpperHalfPoint& z);

/// Node of the orbit enumeration tree.
struct SearchNode {
    enum class Edge { root, S, T, Tinv };

    UpperHalfPoint point;   // gamma^{-1} . z(F)
    UpperHalfPoint anchor;  // matching representative in the orbit of 2j
    Mat2 gamma;             // accumulated, det +1
    Edge edge = Edge::root;
};

/// All children allowed by the three labeled edge rules (the inversion rule is
/// tested on the anchor), before the distance prune.
std::vector<SearchNode> node_children(const SearchNode& node);

/// Children surviving the prune (t^2+u^2+1)/(2u) <= c (slack biased toward
/// keeping nodes).
std::vector<SearchNode> expand_node(const SearchNode& node, double c);

struct NodeRecord {
    UpperHalfPoint point;
    Mat2 gamma;
    bool expanded = false;
};

struct SearchStats {
    std::uint64_t nodes_expanded = 0;
    double initial_bound = 0.0;
    double final_bound = 0.0;
    UpperHalfPoint z_form;
    UpperHalfPoint minimizer;
    std::vector<NodeRecord> trace;
};

/// Objective plugged into the orbit search. value/tie_tuple see the
/// accumulated matrix; bound_arg maps the current best value to the argument
/// of eps_inverse_cosh (monotone nondecreasing, so bound updates only shrink).
struct OrbitObjective {
    std::function<Int(const Mat2&)> value;
    std::function<std::vector<Int>(const Mat2&)> tie_tuple;
    std::function<double(const Int&)> bound_arg;
};

struct OrbitSearchResult {
    Mat2 gamma;
    Int value;
    SearchStats stats;
};

/// Best-first certified search over the SL(2,Z)-orbit of z_red (a fundamental
/// domain point). recentered carries the sphere directions of the recentered
/// form driving the eps machinery.
OrbitSearchResult search_orbit(const UpperHalfPoint& z_red, const RootSphereData& recentered,
                               const OrbitObjective& objective, int threads = 1);

enum class FormNorm { euclidean, max };

/// Theorem-backed search radius: c = eps_inverse_cosh(F0, B) with
/// B = 2^{n-1} best / theta for the Euclidean size and
/// B = 2^{n-1} (n+1) best^2 / theta for the max norm.
double bound_for(FormNorm norm, int degree, const Int& best, double theta,
                 const RootSphereData& recentered, int threads = 1);

struct FormReduction {
    Mat2 gamma;          // gamma0 * search gamma; F' = act(F, gamma)
    Mat2 gamma0;         // the fundamental-domain step alone
    BinaryForm reduced;  // the witness form F . gamma
    Int value;
    SearchStats stats;
};

/// Smallest representative of the SL(2,Z)-orbit of a stable form of degree
/// >= 3 under the chosen coefficient norm.
FormReduction smallest_representative(const BinaryForm& f, FormNorm norm, int threads = 1,
                                      double tol_z = 1e-12);

}  // namespace minred
