#ifndef BENT_GERSCHGORIN_HPP
#define BENT_GERSCHGORIN_HPP

// Gerschgorin disc machinery: deleted absolute row sums, diagonally scaled
// discs, a heuristic search for a scaling that certifies positivity by row
// sums alone, the order-of-magnitude squeezing bound, and the first-order
// perturbation audit of the mixed state's partial transpose.

#include <optional>
#include <utility>
#include <vector>

#include "bent/fock.hpp"
#include "bent/states.hpp"

namespace bent {

struct GerschgorinDisc {
    double center;
    double radius;
};

struct GerschgorinReport {
    std::vector<GerschgorinDisc> discs; // unscaled, one per row
    std::optional<std::vector<GerschgorinDisc>> scaled;
    double min_disc_edge; // min over rows of center - radius (scaled when present)
};

// Disc i: center m(i,i), radius sum_{j!=i} |m(i,j)|, or with a positive
// diagonal scaling d, radius (1/d_i) sum_{j!=i} d_j |m(i,j)|. Every eigenvalue
// of a hermitian m lies in the union of the discs.
GerschgorinReport gerschgorin_discs(const Matrix& m,
                                    const std::optional<RealVector>& scaling = {});

struct PositivityCertificate {
    RealVector scaling;
    double min_edge;    // over rows that took part in the exact test
    int null_rows;      // rows skipped as numerically empty (truncation tail)
    double null_tol;    // threshold below which a whole row counts as empty
};

// Searches for a positive diagonal scaling whose discs all sit in the
// nonnegative half line: a positivity certificate by plain sums, no
// eigensolver involved. Rows whose center and radius are both below null_tol
// (truncation-emptied rows) are excluded from the exact test and counted.
// Returns nothing when the iteration fails; failure is NOT a negativity
// verdict (such scalings need not exist for positive matrices).
std::optional<PositivityCertificate>
scaled_positivity_search(const Matrix& m, int max_rounds = 100,
                         double null_rel_tol = 1e-12);

struct OmegaBound {
    double bound;            // 10^(floor(log10 min(p2/4, p1/2)) - safety_exponent)
    double floor_p2_quarter; // p_2 / 4
    double floor_p1_half;    // p_1 / 2
    double vacuum_floor;     // sqrt(1 - bound^2), the replaced vacuum weight
    int safety_exponent;
};

// Order-of-magnitude rule for the admissible squeezing: one decade below the
// smaller of p_2/4 and p_1/2. Heuristic and conservative by construction; the
// eigenvalue check remains authoritative.
OmegaBound omega_upper_bound(const PhotonDistribution& d, double lambda);

struct SpotlightRow {
    int delta;                // block the row leads
    std::pair<int, int> label;
    double center;            // diagonal entry, paper normalization (1/lambda)
    double radius_actual;     // deleted absolute row sum over the full matrix
    double radius_unperturbed; // same row in the unmixed state's blocks
    double radius_paper;      // unperturbed radius + the flat |omega| overestimate
    double slack;             // radius_paper - radius_actual
    double left_edge_actual;
    double left_edge_paper;
};

struct PerturbationAudit {
    std::vector<SpotlightRow> rows;
    double remainder_max;     // max |rho'^{T_B} - first-order model| (natural scale)
    bool perturbation_confined; // first-order cross terms touch only the lead
                                // rows/columns of blocks |delta| <= 2
    double normalization;     // factor applied to centers/radii (1/lambda)
};

// Splits the transposed mixture into unperturbed blocks + the vacuum
// replacement + the first-order cross perturbation, and compares the actual
// angle-dependent disc radii of the five lead rows against the flat
// overestimates (2|omega| on the difference-0 row, |omega| on the others).
PerturbationAudit perturbation_audit(const MixtureSpec& spec);

} // namespace bent

#endif
