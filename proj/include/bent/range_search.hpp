#ifndef BENT_RANGE_SEARCH_HPP
#define BENT_RANGE_SEARCH_HPP

// Numerical side of the range criterion: the projector onto the range of the
// mixed state at truncation, a seeded multi-start alternating maximization of
// the product-vector overlap with that range, and the closed-form coefficient
// contradiction that rules out product vectors analytically for any nonzero
// squeezing at an unbalanced second splitter.
//
// A failed search is evidence, never proof: the reported quantity bounds how
// close the range comes to the product manifold at this truncation.

#include <cstdint>
#include <utility>
#include <vector>

#include "bent/fock.hpp"
#include "bent/states.hpp"

namespace bent {

struct RangeSubspace {
    std::vector<TwoModeVector> basis; // orthonormal
    Matrix projector;                 // sum of |e_i><e_i|
    int rank;
    FockCutoff cutoff;

    double idempotency_residual() const; // max |P^2 - P|
};

// Span of the beam-split number states with weight above rank_tol plus the
// squeezed component when lambda < 1.
RangeSubspace build_range_subspace(const MixtureSpec& spec, double rank_tol = 1e-14);

struct RangeSearchOptions {
    int restarts = 200;
    int max_iter = 500;
    std::uint64_t seed = 1729; // documented default; report echoes it
    double conv_tol = 1e-12;
};

struct RangeSearchResult {
    double best_overlap; // max over restarts of <v1 v2|P|v1 v2>
    SingleModeVector best_v1, best_v2;
    int restarts;
    std::vector<int> iterations_per_restart;
    bool converged; // the best restart stopped on conv_tol, not the iteration cap
    std::vector<double> overlap_trace; // per-iteration overlaps of the best restart
};

// Alternating maximization of f(v1,v2) = <v1 x v2|P|v1 x v2>: with one side
// fixed the optimum of the other is the top eigenvector of the contracted
// operator, so f is nondecreasing in every half step. Restart seeds are drawn
// up front from the master seed; the result does not depend on scheduling.
RangeSearchResult product_vector_search(const RangeSubspace& sub,
                                        const RangeSearchOptions& opts = {});

struct ContradictionReport {
    int order;           // truncation order of the coefficient system (>= 4)
    double coefficient;  // (2k)!/(4^k (k!)^2) at k = 2, i.e. 3/8
    double expr_13;      // coefficient * |omega|^2 cos(theta) sin^3(theta)
    double expr_31;      // coefficient * |omega|^2 cos^3(theta) sin(theta)
    double difference;   // expr_13 - expr_31 (the shared unknown cancels)
    double closed_form;  // coefficient * |omega|^2 cos sin (sin^2 - cos^2)
    // same cancellation at higher even levels 2k <= order: (2k, difference)
    std::vector<std::pair<int, double>> higher_levels;
    double magnitude;    // |difference|
};

// Reproduces the coefficient-matching contradiction: a product vector in the
// range forces two expressions that differ by
// coefficient * omega^2 cos(theta) sin(theta) (sin^2 - cos^2), nonzero exactly
// when omega != 0 and theta != pi/4. Throws DegenerateAngle at theta = pi/4.
ContradictionReport symbolic_contradiction_check(const MixtureSpec& spec, int order = 4);

} // namespace bent

#endif
