#pragma once

#include <vector>

#include "minred/dynamics.hpp"
#include "minred/mat2.hpp"

namespace minred {

/// The p+1 matrices {(1 0; 0 p)} u {(p a; 0 1) : 0 <= a < p} moving the Gauss
/// point to each neighboring vertex.
std::vector<Mat2> neighbor_set(const Int& p);

/// Divide both forms by p^{e1}, e1 the minimal coefficient valuation; at least
/// one coefficient becomes a p-unit. Returns the model and e1.
std::pair<EndoModel, int> p_normalize(const EndoModel& f, const Int& p);

/// Model normalized at p together with v_p(Res).
struct PAdicContext {
    Int p;
    EndoModel model;
    int vres = 0;
};

PAdicContext p_context(const EndoModel& f, const Int& p);

/// Valuation descent: walks to a vertex of minimal v_p(Res), never revisiting
/// the previous vertex; a valuation below d (even degree) or 2d (odd degree)
/// certifies minimality immediately.
std::pair<EndoModel, Mat2> p_minimal_model(const EndoModel& f, const Int& p);

/// Representatives of distinct GL(2,Z_p)-orbits sharing the minimal |Res|.
struct OrbitSet {
    std::vector<std::pair<EndoModel, Mat2>> representatives;
};

/// One minimal model plus the equal-valuation path walked in both directions.
OrbitSet all_p_orbits(const EndoModel& f, const Int& p);

/// Representatives of all GL(2,Z)-orbits of minimal models: per-prime orbit
/// sets combined across the accumulated set, ascending primes.
OrbitSet all_minimal_orbits(const EndoModel& f);

struct ReducedModelReport {
    struct OrbitOutcome {
        EndoModel representative;  // minimal-orbit representative
        Mat2 orbit_gamma;
        EndoModel reduced;  // its SL(2,Z)-reduced conjugate
        Mat2 reduce_gamma;
        Int height;
        SearchStats stats;
    };
    std::vector<OrbitOutcome> orbits;
    size_t winner = 0;
};

struct ReducedModel {
    EndoModel model;
    Mat2 gamma;
    ReducedModelReport report;
};

/// End-to-end reduced model: all minimal orbits, each orbit SL(2,Z)-reduced,
/// global height minimizer returned with the per-orbit table.
ReducedModel reduced_model(const EndoModel& f, int threads = 1, double tol_z = 1e-12);

}  // namespace minred
