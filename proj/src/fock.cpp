#include "bent/fock.hpp"

#include <cmath>

namespace bent {

double hermiticity_residual(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

static void check_hermitian(const Matrix& m, double tol_herm) {
    if (m.rows() != m.cols())
        throw NonHermitian("matrix is not square");
    double res = hermiticity_residual(m);
    if (res > tol_herm)
        throw NonHermitian("hermiticity residual " + std::to_string(res) +
                           " exceeds tolerance");
}

RealVector hermitian_eigenvalues(const Matrix& m, double tol_herm) {
    check_hermitian(m, tol_herm);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver failed to converge");
    return solver.eigenvalues(); // ascending by contract
}

double min_eigenvalue(const Matrix& m, double tol_herm) {
    return hermitian_eigenvalues(m, tol_herm)(0);
}

std::pair<std::vector<TwoModeVector>, int>
orthonormalize(const std::vector<TwoModeVector>& vs, double dep_tol) {
    if (vs.empty())
        throw EmptyInput("orthonormalize: empty input sequence");
    const FockCutoff cutoff = vs.front().cutoff;
    for (const auto& v : vs)
        if (!(v.cutoff == cutoff))
            throw InvalidParameter("orthonormalize: mixed cutoffs");

    std::vector<TwoModeVector> basis;
    for (const auto& v : vs) {
        Vector w = v.coeffs;
        const double original = w.norm();
        if (original == 0.0)
            continue;
        // two projection passes; a single pass loses orthogonality when the
        // input is nearly dependent on the accumulated basis
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis)
                w -= b.coeffs * b.coeffs.dot(w);
        const double remaining = w.norm();
        if (remaining < dep_tol * original)
            continue; // linearly dependent; drop
        basis.push_back({w / remaining, cutoff});
    }
    const int rank = static_cast<int>(basis.size());
    return {std::move(basis), rank};
}

TwoModeState trace_and_renormalize(TwoModeState s) {
    const double tr = s.matrix.trace().real();
    if (!(tr > 0.0))
        throw ZeroTrace("trace_and_renormalize: trace " + std::to_string(tr) +
                        " is not positive");
    s.matrix /= tr;
    return s;
}

double swap_invariance_residual(const TwoModeState& s) {
    const int d = s.cutoff.dim();
    double res = 0.0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    const Complex swapped = s.matrix(s.cutoff.index(b, a), s.cutoff.index(e, c));
                    res = std::max(res, std::abs(swapped - s.matrix(s.cutoff.index(a, b),
                                                                    s.cutoff.index(c, e))));
                }
    return res;
}

void require_valid_state(const TwoModeState& s, double tol_herm, double tol_trace) {
    check_hermitian(s.matrix, tol_herm);
    const double tr = s.matrix.trace().real();
    if (std::abs(tr - 1.0) > tol_trace)
        throw InvalidParameter("state trace " + std::to_string(tr) + " is not 1");
}

} // namespace bent
