#include "bent/hankel.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>

namespace bent {

RealMatrix hankel_a(const PhotonDistribution& d, int i, int order) {
    if (i < 0)
        throw InvalidParameter("hankel_a: index must be nonnegative");
    if (order < 1)
        throw InvalidParameter("hankel_a: order must be >= 1");
    if (i + 2 * (order - 1) > d.cutoff.n_max)
        throw CutoffExceeded("hankel_a: entry p_" + std::to_string(i + 2 * (order - 1)) +
                             " lies beyond the cutoff n_max = " +
                             std::to_string(d.cutoff.n_max));
    RealMatrix a(order, order);
    for (int r = 0; r < order; ++r)
        for (int c = 0; c < order; ++c)
            a(r, c) = d.probs(i + r + c);
    return a;
}

HankelFamily build_hankel_family(const PhotonDistribution& d, int max_index, int order) {
    HankelFamily fam{order, {}, {}};
    for (int i = 0; i <= max_index; ++i) {
        fam.a.emplace(i, hankel_a(d, i, order));
        fam.b.emplace(i, direct_b(i, order));
    }
    return fam;
}

SylvesterReport sylvester_psd_test(const RealMatrix& m, double psd_rel) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw NonHermitian("sylvester_psd_test: matrix is not symmetric");

    const int n = static_cast<int>(m.rows());
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);

    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(m, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues()(0);
    const double psd_tol = psd_rel * scale;

    SylvesterReport report;
    report.psd = min_eig >= -psd_tol;
    report.min_eigenvalue = min_eig;
    report.psd_tol = psd_tol;
    report.first_failing_minor = 0;
    report.minors.reserve(n);
    for (int k = 1; k <= n; ++k) {
        const double det = m.topLeftCorner(k, k).fullPivLu().determinant();
        report.minors.push_back(det);
        // diagnostic only: a minor is "failing" when clearly negative
        if (report.first_failing_minor == 0 && det < -1e-12 * std::pow(scale, k))
            report.first_failing_minor = k;
    }
    return report;
}

SylvesterReport proposition1_ppt_test(const PhotonDistribution& d, int order) {
    return sylvester_psd_test(hankel_a(d, 0, order));
}

double block_coefficient(int n, int k, int kp) {
    auto log_choose = [](int nn, int kk) {
        return std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
    };
    return std::exp(-n * std::numbers::ln2 +
                    0.5 * (log_choose(n, k) + log_choose(n, kp)));
}

HadamardFactors hadamard_factors(int j, int order) {
    if (j < 0 || order < 1)
        throw InvalidParameter("hadamard_factors: j >= 0 and order >= 1 required");
    HadamardFactors fac;
    fac.c.resize(order, order);
    fac.d.resize(order, order);
    fac.e.resize(order, order);
    fac.f.resize(order, order);
    // factorials stay exact in 64-bit integers up to 20!; beyond that the C
    // factor silently degrades to floating point, flagged for the caller
    fac.c_exact = (j + 2 * (order - 1)) <= 20;
    for (int r = 0; r < order; ++r)
        for (int c = 0; c < order; ++c) {
            fac.c(r, c) = std::exp(std::lgamma(j + r + c + 1.0));
            fac.d(r, c) = std::exp2(-(j + r + c));
            fac.e(r, c) = std::exp(-0.5 * std::lgamma(r + 1.0));
            fac.f(r, c) = std::exp(-0.5 * std::lgamma(j + r + 1.0));
        }
    if (fac.c_exact) {
        // replace the lgamma approximations by the exact integer values
        std::uint64_t factorial = 1;
        std::vector<double> exact(j + 2 * order - 1, 1.0);
        for (int n = 1; n < static_cast<int>(exact.size()); ++n) {
            factorial *= static_cast<std::uint64_t>(n);
            exact[n] = static_cast<double>(factorial);
        }
        for (int r = 0; r < order; ++r)
            for (int c = 0; c < order; ++c)
                fac.c(r, c) = exact[j + r + c];
    }
    return fac;
}

RealMatrix reconstruct_b(int j, int order) {
    const HadamardFactors fac = hadamard_factors(j, order);
    return fac.c.cwiseProduct(fac.d)
        .cwiseProduct(fac.e)
        .cwiseProduct(fac.e.transpose())
        .cwiseProduct(fac.f)
        .cwiseProduct(fac.f.transpose());
}

RealMatrix direct_b(int j, int order) {
    if (j < 0 || order < 1)
        throw InvalidParameter("direct_b: j >= 0 and order >= 1 required");
    RealMatrix b(order, order);
    for (int r = 0; r < order; ++r)
        for (int c = 0; c < order; ++c)
            b(r, c) = block_coefficient(j + r + c, j + r, r);
    return b;
}

RealMatrix reconstruct_block_from_hankel(const PhotonDistribution& d, int i, int order) {
    return hankel_a(d, i, order).cwiseProduct(direct_b(i, order));
}

namespace {

// Fraction-free (Bareiss) elimination; after step k the pivot equals the
// leading principal minor of order k+1. Valid without pivoting as long as
// every leading minor is nonzero, which holds for the factorial Hankel
// matrices this is used on.
std::optional<std::vector<std::int64_t>> bareiss_minors_i64(std::vector<std::int64_t> m,
                                                            int n) {
    std::vector<std::int64_t> minors;
    std::int64_t prev = 1;
    for (int k = 0; k < n; ++k) {
        const std::int64_t pivot = m[k * n + k];
        if (pivot == 0)
            return std::nullopt;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                std::int64_t t1, t2, diff;
                if (__builtin_mul_overflow(m[i * n + j], pivot, &t1) ||
                    __builtin_mul_overflow(m[i * n + k], m[k * n + j], &t2) ||
                    __builtin_sub_overflow(t1, t2, &diff))
                    return std::nullopt;
                m[i * n + j] = diff / prev; // exact division
            }
        prev = pivot;
        minors.push_back(pivot);
    }
    return minors;
}

std::vector<BigInt> bareiss_minors_big(std::vector<BigInt> m, int n) {
    std::vector<BigInt> minors;
    BigInt prev = 1;
    for (int k = 0; k < n; ++k) {
        const BigInt pivot = m[k * n + k];
        if (pivot == 0)
            throw Error("exact minor computation hit a zero pivot");
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i * n + j] = (m[i * n + j] * pivot - m[i * n + k] * m[k * n + j]) / prev;
        prev = pivot;
        minors.push_back(pivot);
    }
    return minors;
}

} // namespace

std::vector<BigInt> exact_leading_minors_c(int j, int order) {
    if (j < 0 || order < 1)
        throw InvalidParameter("exact_leading_minors_c: j >= 0 and order >= 1 required");

    std::vector<BigInt> fact(j + 2 * order - 1);
    fact[0] = 1;
    for (int n = 1; n < static_cast<int>(fact.size()); ++n)
        fact[n] = fact[n - 1] * n;

    // 64-bit fast path when all entries fit
    bool fits = true;
    for (const auto& f : fact)
        if (f > std::numeric_limits<std::int64_t>::max()) {
            fits = false;
            break;
        }
    if (fits) {
        std::vector<std::int64_t> m(order * order);
        for (int r = 0; r < order; ++r)
            for (int c = 0; c < order; ++c)
                m[r * order + c] = static_cast<std::int64_t>(fact[j + r + c]);
        if (auto minors = bareiss_minors_i64(std::move(m), order)) {
            std::vector<BigInt> out;
            out.reserve(minors->size());
            for (auto v : *minors)
                out.emplace_back(v);
            return out;
        }
    }

    std::vector<BigInt> m(order * order);
    for (int r = 0; r < order; ++r)
        for (int c = 0; c < order; ++c)
            m[r * order + c] = fact[j + r + c];
    return bareiss_minors_big(std::move(m), order);
}

} // namespace bent
