#ifndef BENT_PARTIAL_TRANSPOSE_HPP
#define BENT_PARTIAL_TRANSPOSE_HPP

// Partial transposition on mode B, the reordering of the two-mode basis by
// the photon-number difference delta = a-b, and the resulting block
// decomposition. For diagonal beam-split states the transposed matrix is an
// exact direct sum over delta; general states can leak between blocks, which
// is measured rather than assumed.

#include <map>
#include <utility>
#include <vector>

#include "bent/fock.hpp"

namespace bent {

namespace tol_pt {
inline constexpr double leak = 1e-12;
inline constexpr double psd_rel = 1e-10; // scaled by the largest block diagonal entry
} // namespace tol_pt

struct PTBlockDecomposition {
    std::map<int, Matrix> blocks; // delta -> hermitian block
    FockCutoff cutoff;
    double off_block_residual = 0.0; // largest |entry| outside all blocks

    // Basis labels (a,b) of block delta, in row order:
    // delta >= 0: {|delta+k, k>}, delta < 0: {|k, k+|delta|>}.
    static std::vector<std::pair<int, int>> block_basis(int delta, FockCutoff cutoff);
};

// Off-block entries above leak_tol; carries the decomposition so general
// states can still be inspected.
struct BlockLeakage : Error {
    BlockLeakage(const std::string& msg, PTBlockDecomposition dec)
        : Error(msg), decomposition(std::move(dec)) {}
    PTBlockDecomposition decomposition;
};

// <a,b|out|c,d> = <a,d|in|c,b>. Preserves hermiticity and trace; involutive.
TwoModeState partial_transpose_B(const TwoModeState& state);

// Extracts the delta-blocks of a transposed state and the residual over all
// entries with a-b != c-d. Throws BlockLeakage (carrying the decomposition)
// when the residual exceeds leak_tol.
PTBlockDecomposition block_decompose(const TwoModeState& pt_state,
                                     double leak_tol = tol_pt::leak);

std::map<int, double> min_block_eigenvalues(const PTBlockDecomposition& dec);

struct PptVerdict {
    bool ppt;
    double min_eigenvalue;
    int worst_delta;
    double psd_tol; // the threshold actually applied
};

// PPT verdict from block minima: positive iff every block minimum clears
// -psd_rel * (largest block diagonal entry).
PptVerdict ppt_from_blocks(const PTBlockDecomposition& dec,
                           const std::map<int, double>& minima,
                           double psd_rel = tol_pt::psd_rel);

} // namespace bent

#endif
