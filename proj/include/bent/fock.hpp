#ifndef BENT_FOCK_HPP
#define BENT_FOCK_HPP

// Truncated two-mode Fock space containers and the dense-hermitian contracts
// (eigenvalues, orthonormalization, renormalization) the rest of the toolkit
// builds on. Everything here is immutable after construction and safe to
// share across threads.

#ifdef EIGEN_USE_LAPACKE
#include <lapacke.h>
#endif
#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

#include "bent/errors.hpp"

namespace bent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Absolute, calibrated for unit-trace matrices of
// dimension <= ~4000 where double-precision eigensolver error stays orders of
// magnitude below them.
namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double norm = 1e-10;
inline constexpr double dep = 1e-12;
} // namespace tol

// Per-mode photon-number cutoff. Single-mode dimension is n_max+1; pairs
// (a,b) are flattened row-major with mode A first: (a,b) -> a*(n_max+1)+b.
struct FockCutoff {
    explicit FockCutoff(int n) : n_max(n) {
        if (n < 2)
            throw InvalidParameter("FockCutoff: n_max must be >= 2, got " + std::to_string(n));
    }
    int n_max;
    int dim() const { return n_max + 1; }
    int pair_dim() const { return dim() * dim(); }
    int index(int a, int b) const { return a * dim() + b; }

    friend bool operator==(const FockCutoff&, const FockCutoff&) = default;
};

struct SingleModeVector {
    Vector coeffs; // length n_max+1
    FockCutoff cutoff;
};

struct TwoModeVector {
    Vector coeffs; // length (n_max+1)^2, index (a,b) -> a*(n_max+1)+b
    FockCutoff cutoff;
};

// Hermitian matrix on the truncated two-mode space. tail_mass records the
// probability dropped by the truncation before renormalization, so the
// faithfulness of any downstream verdict stays auditable.
struct TwoModeState {
    Matrix matrix;
    FockCutoff cutoff;
    double tail_mass = 0.0;
};

// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_residual(const Matrix& m);

// Full real spectrum in ascending order. Deterministic: repeated calls on the
// same input return identical values. Throws NonHermitian if the input fails
// the hermiticity check.
RealVector hermitian_eigenvalues(const Matrix& m, double tol_herm = tol::herm);

// Smallest eigenvalue only (same checks as hermitian_eigenvalues).
double min_eigenvalue(const Matrix& m, double tol_herm = tol::herm);

// Gram-Schmidt with dependency dropping: inputs whose residual after
// projection falls below dep_tol (relative to their norm) are discarded.
// Returns the orthonormal set and its size (the rank).
std::pair<std::vector<TwoModeVector>, int>
orthonormalize(const std::vector<TwoModeVector>& vs, double dep_tol = tol::dep);

// Scales the state to unit trace; tail_mass carries over. Throws ZeroTrace
// when the trace is not strictly positive.
TwoModeState trace_and_renormalize(TwoModeState s);

// max-norm of (swap . m . swap - m) where swap|i,j> = |j,i>.
double swap_invariance_residual(const TwoModeState& s);

// Hermiticity + unit trace check used by consumers that require a valid state.
void require_valid_state(const TwoModeState& s,
                         double tol_herm = tol::herm,
                         double tol_trace = tol::trace);

} // namespace bent

#endif
