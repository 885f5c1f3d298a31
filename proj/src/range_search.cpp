#include "bent/range_search.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace bent {

double RangeSubspace::idempotency_residual() const {
    return (projector * projector - projector).cwiseAbs().maxCoeff();
}

RangeSubspace build_range_subspace(const MixtureSpec& spec, double rank_tol) {
    spec.validate();
    const FockCutoff cutoff = spec.cutoff;

    std::vector<TwoModeVector> spanning;
    if (spec.lambda > 0.0)
        for (int n = 0; n <= cutoff.n_max; ++n)
            if (spec.distribution.probs(n) > rank_tol)
                spanning.push_back(
                    beam_split_number_state(n, std::numbers::pi / 4.0, cutoff));
    if (spec.lambda < 1.0)
        spanning.push_back(build_omega_state(spec.omega, spec.theta2, cutoff));

    auto [basis, rank] = orthonormalize(spanning);
    Matrix projector = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
    for (const auto& b : basis)
        projector.noalias() += b.coeffs * b.coeffs.adjoint();
    return RangeSubspace{std::move(basis), std::move(projector), rank, cutoff};
}

namespace {

// Portable gaussian from raw 64-bit draws (Box-Muller); avoids the
// implementation-defined std::normal_distribution sequence.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    Vector unit_vector(int dim) {
        Vector v(dim);
        for (int i = 0; i < dim; ++i)
            v(i) = Complex((*this)(), (*this)());
        return v / v.norm();
    }

private:
    double uniform() {
        // (0,1]: never returns 0, so the log above is safe
        return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
    }
    std::mt19937_64 engine_;
};

// Q[b',b] = sum_{a',a} conj(v1[a']) P[(a',b'),(a,b)] v1[a]
Matrix contract_mode_a(const Matrix& p, const Vector& v1, int d) {
    Matrix q = Matrix::Zero(d, d);
    for (int ap = 0; ap < d; ++ap)
        for (int a = 0; a < d; ++a) {
            const Complex w = std::conj(v1(ap)) * v1(a);
            if (w == Complex(0.0))
                continue;
            q.noalias() += w * p.block(ap * d, a * d, d, d);
        }
    return q;
}

// Q[a',a] = sum_{b',b} conj(v2[b']) P[(a',b'),(a,b)] v2[b]
Matrix contract_mode_b(const Matrix& p, const Vector& v2, int d) {
    Matrix q(d, d);
    for (int ap = 0; ap < d; ++ap)
        for (int a = 0; a < d; ++a)
            q(ap, a) = v2.dot(p.block(ap * d, a * d, d, d) * v2);
    return q;
}

std::pair<double, Vector> top_eigenpair(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const int last = static_cast<int>(m.rows()) - 1;
    return {solver.eigenvalues()(last), solver.eigenvectors().col(last)};
}

} // namespace

RangeSearchResult product_vector_search(const RangeSubspace& sub,
                                        const RangeSearchOptions& opts) {
    if (opts.restarts < 1)
        throw InvalidParameter("product_vector_search: restarts must be >= 1");
    const int d = sub.cutoff.dim();

    // per-restart seeds drawn up front so the outcome is independent of any
    // execution interleaving
    std::mt19937_64 master(opts.seed);
    std::vector<std::uint64_t> seeds(opts.restarts);
    for (auto& s : seeds)
        s = master();

    RangeSearchResult result{-1.0,
                             SingleModeVector{Vector(), sub.cutoff},
                             SingleModeVector{Vector(), sub.cutoff},
                             opts.restarts,
                             {},
                             false,
                             {}};
    result.iterations_per_restart.reserve(opts.restarts);

    for (int r = 0; r < opts.restarts; ++r) {
        GaussianSource rng(seeds[r]);
        Vector v1 = rng.unit_vector(d);
        Vector v2 = rng.unit_vector(d);

        double f = -1.0;
        bool restart_converged = false;
        int used = opts.max_iter;
        std::vector<double> trace;
        for (int it = 0; it < opts.max_iter; ++it) {
            const double f_prev = f;
            auto [fb, best_b] = top_eigenpair(contract_mode_a(sub.projector, v1, d));
            v2 = best_b;
            auto [fa, best_a] = top_eigenpair(contract_mode_b(sub.projector, v2, d));
            v1 = best_a;
            f = fa;
            trace.push_back(f);
            if (it > 0 && std::abs(f - f_prev) < opts.conv_tol) {
                restart_converged = true;
                used = it + 1;
                break;
            }
        }
        result.iterations_per_restart.push_back(used);
        if (f > result.best_overlap) {
            result.best_overlap = f;
            result.best_v1 = SingleModeVector{v1, sub.cutoff};
            result.best_v2 = SingleModeVector{v2, sub.cutoff};
            result.converged = restart_converged;
            result.overlap_trace = std::move(trace);
        }
    }
    return result;
}

ContradictionReport symbolic_contradiction_check(const MixtureSpec& spec, int order) {
    if (order < 4)
        throw InvalidParameter("symbolic_contradiction_check: order must be >= 4");
    const double theta = spec.theta2;
    if (theta == std::numbers::pi / 4.0)
        throw DegenerateAngle("contradiction check is void at theta = pi/4");

    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double w2 = std::norm(spec.omega);

    auto level_coefficient = [](int k) {
        // (2k)! / (4^k (k!)^2)
        return std::exp(std::lgamma(2 * k + 1.0) - 2.0 * std::lgamma(k + 1.0) -
                        k * std::log(4.0));
    };

    ContradictionReport rep;
    rep.order = order;
    rep.coefficient = level_coefficient(2);
    rep.expr_13 = rep.coefficient * w2 * c * s * s * s;
    rep.expr_31 = rep.coefficient * w2 * c * c * c * s;
    rep.difference = rep.expr_13 - rep.expr_31;
    rep.closed_form = rep.coefficient * w2 * c * s * (s * s - c * c);
    rep.magnitude = std::abs(rep.difference);
    for (int k = 3; 2 * k <= order; ++k) {
        const double wk = std::pow(std::abs(spec.omega), k);
        const double diff = level_coefficient(k) * wk * c * s *
                            (std::pow(s, 2 * k - 2) - std::pow(c, 2 * k - 2));
        rep.higher_levels.emplace_back(2 * k, diff);
    }
    return rep;
}

} // namespace bent
