#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "bent/fock.hpp"
#include "bent/partial_transpose.hpp"
#include "bent/states.hpp"
#include "test_helpers.hpp"

using namespace bent;
using doctest::Approx;

namespace {

TwoModeVector basis_vector(int a, int b, FockCutoff cutoff) {
    Vector v = Vector::Zero(cutoff.pair_dim());
    v(cutoff.index(a, b)) = 1.0;
    return {std::move(v), cutoff};
}

} // namespace

TEST_CASE("cutoff validation and indexing") {
    CHECK_THROWS_AS(FockCutoff(1), InvalidParameter);
    const FockCutoff c(4);
    CHECK(c.dim() == 5);
    CHECK(c.pair_dim() == 25);
    CHECK(c.index(2, 3) == 13);
}

TEST_CASE("hermitian_eigenvalues on closed-form inputs") {
    Matrix m(2, 2);
    m << 0.0, 0.5, 0.5, 0.0;
    const RealVector ev = hermitian_eigenvalues(m);
    CHECK(ev(0) == Approx(-0.5).epsilon(1e-14));
    CHECK(ev(1) == Approx(0.5).epsilon(1e-14));

    const RealVector id = hermitian_eigenvalues(Matrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i)
        CHECK(id(i) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigenvalues rejects non-hermitian input") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(m), NonHermitian);
}

TEST_CASE("difference-0 block of the split one-photon state carries -p1/2") {
    const FockCutoff cutoff(2);
    RealVector weights = RealVector::Zero(3);
    weights(1) = 1.0;
    const auto d = custom_distribution(weights, cutoff);
    const TwoModeState rho =
        beam_split_diagonal_state(d, std::numbers::pi / 4.0);
    const auto dec = block_decompose(partial_transpose_B(rho));
    const RealVector ev = hermitian_eigenvalues(dec.blocks.at(0));
    CHECK(ev(0) == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("orthonormalize drops duplicates and dependents") {
    const FockCutoff cutoff(3);
    const TwoModeVector vac = basis_vector(0, 0, cutoff);

    SUBCASE("duplicate input") {
        const auto [basis, rank] = orthonormalize({vac, vac});
        CHECK(rank == 1);
        CHECK(basis.size() == 1);
        CHECK(std::abs(basis[0].coeffs.dot(vac.coeffs)) == Approx(1.0));
    }

    SUBCASE("already orthogonal beam-split states stay a rank-2 set") {
        const auto psi1 = beam_split_number_state(1, std::numbers::pi / 4.0, cutoff);
        const auto psi2 = beam_split_number_state(2, std::numbers::pi / 4.0, cutoff);
        const auto [basis, rank] = orthonormalize({psi1, psi2});
        CHECK(rank == 2);
        CHECK(std::abs(basis[0].coeffs.dot(psi1.coeffs)) == Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(basis[1].coeffs.dot(psi2.coeffs)) == Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("below the dependence tolerance") {
        TwoModeVector nearly = vac;
        nearly.coeffs(cutoff.index(1, 1)) = 1e-20;
        const auto [basis, rank] = orthonormalize({vac, nearly});
        CHECK(rank == 1);
    }

    SUBCASE("empty input") {
        CHECK_THROWS_AS(orthonormalize({}), EmptyInput);
    }
}

TEST_CASE("orthonormalize is idempotent on the spanned projector") {
    std::mt19937_64 rng(7);
    const FockCutoff cutoff(3);
    std::vector<TwoModeVector> vs;
    for (int i = 0; i < 5; ++i) {
        Vector v(cutoff.pair_dim());
        for (int k = 0; k < v.size(); ++k)
            v(k) = Complex(std::uniform_real_distribution<>(-1, 1)(rng),
                           std::uniform_real_distribution<>(-1, 1)(rng));
        vs.push_back({v, cutoff});
    }
    vs.push_back(vs[0]); // force a dependent input

    auto projector = [&](const std::vector<TwoModeVector>& basis) {
        Matrix p = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
        for (const auto& b : basis)
            p += b.coeffs * b.coeffs.adjoint();
        return p;
    };

    const auto [once, rank1] = orthonormalize(vs);
    const auto [twice, rank2] = orthonormalize(once);
    CHECK(rank1 == 5);
    CHECK(rank2 == rank1);
    CHECK((projector(once) - projector(twice)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trace_and_renormalize") {
    const FockCutoff cutoff(2);

    SUBCASE("doubled projector renormalizes to the projector") {
        Matrix m = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
        m(0, 0) = 2.0;
        const TwoModeState out = trace_and_renormalize({m, cutoff, 0.0});
        CHECK(out.matrix(0, 0).real() == Approx(1.0));
        CHECK(out.matrix.trace().real() == Approx(1.0));
    }

    SUBCASE("tail mass is preserved") {
        Matrix m = Matrix::Identity(cutoff.pair_dim(), cutoff.pair_dim());
        const TwoModeState out = trace_and_renormalize({m, cutoff, 0.125});
        CHECK(out.tail_mass == 0.125);
    }

    SUBCASE("zero matrix") {
        const Matrix z = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
        CHECK_THROWS_AS(trace_and_renormalize({z, cutoff, 0.0}), ZeroTrace);
    }
}

TEST_CASE("eigenvalue count and trace identity on random hermitian matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 30);
        const Matrix m = bent_test::random_hermitian(n, rng);
        const RealVector ev = hermitian_eigenvalues(m);
        REQUIRE(ev.size() == n);
        CHECK(std::abs(ev.sum() - m.trace().real()) < 1e-10 * n);
        for (int i = 1; i < n; ++i)
            CHECK(ev(i) >= ev(i - 1)); // ascending
    }
}

TEST_CASE("spectrum is invariant under unitary conjugation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 20);
        const Matrix m = bent_test::random_hermitian(n, rng);
        const Matrix u = bent_test::random_unitary(n, rng);
        const Matrix rotated = u * m * u.adjoint();
        const RealVector a = hermitian_eigenvalues(m);
        const RealVector b = hermitian_eigenvalues(rotated, 1e-8);
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("eigenvalues are deterministic across repeated calls") {
    std::mt19937_64 rng(17);
    const Matrix m = bent_test::random_hermitian(25, rng);
    const RealVector a = hermitian_eigenvalues(m);
    const RealVector b = hermitian_eigenvalues(m);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}
