#include "bent/partial_transpose.hpp"

#include <cmath>

namespace bent {

std::vector<std::pair<int, int>> PTBlockDecomposition::block_basis(int delta,
                                                                   FockCutoff cutoff) {
    std::vector<std::pair<int, int>> basis;
    const int size = cutoff.n_max - std::abs(delta) + 1;
    basis.reserve(size);
    for (int k = 0; k < size; ++k) {
        if (delta >= 0)
            basis.emplace_back(delta + k, k);
        else
            basis.emplace_back(k, k - delta);
    }
    return basis;
}

TwoModeState partial_transpose_B(const TwoModeState& state) {
    require_valid_state(state);
    const FockCutoff cutoff = state.cutoff;
    const int d = cutoff.dim();
    Matrix out(cutoff.pair_dim(), cutoff.pair_dim());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out(cutoff.index(a, b), cutoff.index(c, e)) =
                        state.matrix(cutoff.index(a, e), cutoff.index(c, b));
    return TwoModeState{std::move(out), cutoff, state.tail_mass};
}

PTBlockDecomposition block_decompose(const TwoModeState& pt_state, double leak_tol) {
    const FockCutoff cutoff = pt_state.cutoff;
    const int d = cutoff.dim();

    PTBlockDecomposition dec{{}, cutoff, 0.0};
    for (int delta = -cutoff.n_max; delta <= cutoff.n_max; ++delta) {
        const auto basis = PTBlockDecomposition::block_basis(delta, cutoff);
        const int size = static_cast<int>(basis.size());
        Matrix block(size, size);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c)
                block(r, c) = pt_state.matrix(
                    cutoff.index(basis[r].first, basis[r].second),
                    cutoff.index(basis[c].first, basis[c].second));
        dec.blocks.emplace(delta, std::move(block));
    }

    double residual = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    if (a - b != c - e)
                        residual = std::max(residual,
                                            std::abs(pt_state.matrix(cutoff.index(a, b),
                                                                     cutoff.index(c, e))));
    dec.off_block_residual = residual;

    if (residual > leak_tol)
        throw BlockLeakage("off-block residual " + std::to_string(residual) +
                               " exceeds leak tolerance; state has coherences "
                               "between photon-number-difference sectors",
                           std::move(dec));
    return dec;
}

std::map<int, double> min_block_eigenvalues(const PTBlockDecomposition& dec) {
    std::map<int, double> minima;
    for (const auto& [delta, block] : dec.blocks)
        minima.emplace(delta, min_eigenvalue(block));
    return minima;
}

PptVerdict ppt_from_blocks(const PTBlockDecomposition& dec,
                           const std::map<int, double>& minima, double psd_rel) {
    double max_diag = 0.0;
    for (const auto& [delta, block] : dec.blocks)
        max_diag = std::max(max_diag, block.diagonal().real().maxCoeff());
    const double psd_tol = psd_rel * std::max(max_diag, 1e-300);

    double worst = 0.0;
    int worst_delta = 0;
    bool first = true;
    for (const auto& [delta, value] : minima) {
        if (first || value < worst) {
            worst = value;
            worst_delta = delta;
            first = false;
        }
    }
    return PptVerdict{worst >= -psd_tol, worst, worst_delta, psd_tol};
}

} // namespace bent
