#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "bent/fock.hpp"
#include "bent/states.hpp"

using namespace bent;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent check values for the distributions come from the closed-form
// series: geometric weights, their first-order photon-added reweighting, and
// the squeezed-vacuum normalization sum.
} // namespace

TEST_CASE("thermal distribution closed form and tail") {
    const FockCutoff cutoff(20);
    const auto d = thermal_distribution(1.0, cutoff);
    const double renorm = 1.0 - std::pow(0.5, 21); // kept mass before renormalization
    CHECK(d.probs(0) == Approx(0.5 / renorm).epsilon(1e-14));
    CHECK(d.probs(1) == Approx(0.25 / renorm).epsilon(1e-14));
    CHECK(d.probs(2) == Approx(0.125 / renorm).epsilon(1e-14));
    CHECK(d.probs.sum() == Approx(1.0).epsilon(1e-14));
    CHECK(d.tail_mass == Approx(std::pow(0.5, 21)).epsilon(1e-12));

    CHECK_THROWS_AS(thermal_distribution(0.0, cutoff), InvalidParameter);
    CHECK_THROWS_AS(thermal_distribution(-1.0, cutoff), InvalidParameter);

    // continuity toward the vacuum limit
    const auto tiny = thermal_distribution(1e-6, cutoff);
    CHECK(tiny.probs(0) == Approx(1.0 - 1e-6).epsilon(1e-9));
}

TEST_CASE("shifted thermal distribution") {
    const FockCutoff cutoff(60);
    const auto d = shifted_thermal_distribution(1.0, cutoff);
    CHECK(d.probs(0) == 0.0);
    for (int n = 1; n <= 6; ++n)
        CHECK(d.probs(n) == Approx(std::pow(0.5, n)).epsilon(1e-12));
    CHECK(d.probs.sum() == Approx(1.0).epsilon(1e-14));

    // quoted against the untruncated closed form; the renormalization over the
    // window shifts entries by the tail mass (~3e-11 here)
    const auto d2 = shifted_thermal_distribution(2.0, cutoff);
    CHECK(d2.probs(1) == Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(d2.probs(2) == Approx(2.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("photon-added thermal distribution") {
    const FockCutoff cutoff(60);
    const auto d = photon_added_thermal_distribution(1.0, cutoff);
    CHECK(d.probs(0) == 0.0);
    CHECK(d.probs(1) == Approx(0.25).epsilon(1e-12));
    CHECK(d.probs(2) == Approx(0.25).epsilon(1e-12));
    CHECK(d.probs(3) == Approx(3.0 / 16.0).epsilon(1e-12));
    // series sum (n+1) x^n = (1-x)^-2 makes the untruncated map exactly normalized
    CHECK(std::abs(d.probs.sum() - 1.0) < 1e-14);
    CHECK(d.tail_mass < 1e-10);
}

TEST_CASE("beam-split number states") {
    const FockCutoff cutoff(6);

    SUBCASE("vacuum is invariant") {
        const auto v = beam_split_number_state(0, 0.3, cutoff);
        CHECK(std::abs(v.coeffs(cutoff.index(0, 0)) - 1.0) < 1e-15);
        CHECK(v.coeffs.norm() == Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("one photon, balanced") {
        const auto v = beam_split_number_state(1, kPi / 4.0, cutoff);
        CHECK(v.coeffs(cutoff.index(0, 1)).real() == Approx(1.0 / std::sqrt(2.0)));
        CHECK(v.coeffs(cutoff.index(1, 0)).real() == Approx(1.0 / std::sqrt(2.0)));
    }

    SUBCASE("two photons, balanced") {
        const auto v = beam_split_number_state(2, kPi / 4.0, cutoff);
        CHECK(v.coeffs(cutoff.index(0, 2)).real() == Approx(0.5));
        CHECK(v.coeffs(cutoff.index(1, 1)).real() == Approx(std::sqrt(2.0) / 2.0));
        CHECK(v.coeffs(cutoff.index(2, 0)).real() == Approx(0.5));
    }

    SUBCASE("two photons, general angle") {
        const double theta = 0.53;
        const double s = std::sin(theta), c = std::cos(theta);
        const auto v = beam_split_number_state(2, theta, cutoff);
        CHECK(v.coeffs(cutoff.index(0, 2)).real() == Approx(s * s).epsilon(1e-14));
        CHECK(v.coeffs(cutoff.index(1, 1)).real() ==
              Approx(std::sqrt(2.0) * s * c).epsilon(1e-14));
        CHECK(v.coeffs(cutoff.index(2, 0)).real() == Approx(c * c).epsilon(1e-14));
    }

    SUBCASE("cutoff guard") {
        CHECK_THROWS_AS(beam_split_number_state(7, 0.3, cutoff), CutoffExceeded);
    }
}

TEST_CASE("split number states are orthonormal at any angle") {
    const FockCutoff cutoff(12);
    for (double theta : {kPi / 4.0, kPi / 8.0, 0.2}) {
        std::vector<TwoModeVector> psi;
        for (int n = 0; n <= cutoff.n_max; ++n)
            psi.push_back(beam_split_number_state(n, theta, cutoff));
        for (int m = 0; m <= cutoff.n_max; ++m)
            for (int n = 0; n <= cutoff.n_max; ++n) {
                const double expected = m == n ? 1.0 : 0.0;
                CHECK(std::abs(psi[m].coeffs.dot(psi[n].coeffs) - expected) < 1e-12);
            }
    }
}

TEST_CASE("beam-split diagonal state transports the distribution spectrum") {
    const FockCutoff cutoff(14);

    SUBCASE("pure vacuum distribution") {
        RealVector w = RealVector::Zero(cutoff.dim());
        w(0) = 1.0;
        const auto rho = beam_split_diagonal_state(custom_distribution(w, cutoff), kPi / 4.0);
        CHECK(rho.matrix(0, 0).real() == Approx(1.0));
        CHECK(rho.matrix.cwiseAbs().sum() == Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("shifted thermal spectrum equals the weights") {
        const auto d = shifted_thermal_distribution(1.0, cutoff);
        const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
        RealVector ev = hermitian_eigenvalues(rho.matrix);
        std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
        RealVector p = d.probs;
        std::sort(p.data(), p.data() + p.size(), std::greater<>());
        for (int i = 0; i < p.size(); ++i)
            CHECK(std::abs(ev(i) - p(i)) < 1e-10);
        for (int i = p.size(); i < ev.size(); ++i)
            CHECK(std::abs(ev(i)) < 1e-10);
    }

    SUBCASE("swap invariance at the balanced angle") {
        const auto d = shifted_thermal_distribution(1.5, cutoff);
        const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
        CHECK(swap_invariance_residual(rho) < 1e-12);
    }

    SUBCASE("vacuum elimination survives splitting") {
        for (auto make : {shifted_thermal_distribution, photon_added_thermal_distribution}) {
            const auto d = make(1.0, cutoff);
            const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
            CHECK(rho.matrix(cutoff.index(0, 0), cutoff.index(0, 0)) == Complex(0.0));
        }
    }
}

TEST_CASE("squeezed vacuum coefficients") {
    const FockCutoff cutoff(60);

    SUBCASE("leading coefficients") {
        const Complex w(0.3, 0.0);
        const auto v = squeezed_vacuum_coefficients(w, cutoff);
        const double front = std::pow(1.0 - 0.09, 0.25);
        CHECK(v.coeffs(0).real() == Approx(front).epsilon(1e-14));
        CHECK(v.coeffs(2).real() == Approx(front * 0.3 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(v.coeffs(1) == Complex(0.0));
        CHECK(v.coeffs(3) == Complex(0.0));
    }

    SUBCASE("normalization of the series at |w| = 0.5") {
        const auto v = squeezed_vacuum_coefficients(Complex(0.5, 0.0), cutoff);
        CHECK(std::abs(v.coeffs.squaredNorm() - 1.0) < 1e-10);
    }

    SUBCASE("parameter domain") {
        CHECK_THROWS_AS(squeezed_vacuum_coefficients(Complex(0.0, 0.0), cutoff),
                        InvalidParameter);
        CHECK_THROWS_AS(squeezed_vacuum_coefficients(Complex(1.0, 0.0), cutoff),
                        InvalidParameter);
    }
}

TEST_CASE("squeezed two-mode component") {
    const FockCutoff cutoff(60);

    SUBCASE("normalized at moderate squeezing") {
        const auto om = build_omega_state(Complex(0.1, 0.0), kPi / 8.0, cutoff);
        CHECK(std::abs(om.coeffs.norm() - 1.0) < 1e-10);
    }

    SUBCASE("first-order |1,1> amplitude") {
        const double theta = kPi / 8.0;
        const Complex w(0.05, 0.0);
        const auto om = build_omega_state(w, theta, cutoff);
        const double expected = std::pow(1.0 - std::norm(w), 0.25) * (0.05 / std::sqrt(2.0)) *
                                std::sqrt(2.0) * std::sin(theta) * std::cos(theta);
        CHECK(om.coeffs(cutoff.index(1, 1)).real() == Approx(expected).epsilon(1e-4));
    }

    SUBCASE("only even total photon number appears") {
        const auto om = build_omega_state(Complex(0.4, 0.0), kPi / 8.0, cutoff);
        for (int a = 0; a <= cutoff.n_max; ++a)
            for (int b = 0; b <= cutoff.n_max; ++b)
                if ((a + b) % 2 == 1)
                    CHECK(om.coeffs(cutoff.index(a, b)) == Complex(0.0));
    }

    SUBCASE("angle domain") {
        CHECK_THROWS_AS(build_omega_state(Complex(0.1, 0.0), 0.0, cutoff),
                        InvalidParameter);
        CHECK_THROWS_AS(build_omega_state(Complex(0.1, 0.0), kPi / 4.0, cutoff),
                        InvalidParameter);
    }

    SUBCASE("degenerate squeezing gives the plain vacuum") {
        const auto om = build_omega_state(Complex(0.0, 0.0), kPi / 8.0, cutoff);
        CHECK(om.coeffs(cutoff.index(0, 0)) == Complex(1.0));
        CHECK(om.coeffs.norm() == Approx(1.0));
    }
}

TEST_CASE("mixture construction") {
    const FockCutoff cutoff(20);
    const auto d = shifted_thermal_distribution(1.0, cutoff);

    SUBCASE("endpoints reproduce the components") {
        const MixtureSpec pure_rho{1.0, d, Complex(1e-3, 0.0), kPi / 8.0, cutoff};
        const auto a = build_mixture(pure_rho);
        const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
        CHECK((a.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-14);

        const MixtureSpec pure_omega{0.0, d, Complex(0.3, 0.0), kPi / 8.0, cutoff};
        const auto b = build_mixture(pure_omega);
        const auto om = build_omega_state(Complex(0.3, 0.0), kPi / 8.0, cutoff);
        const Matrix proj = om.coeffs * om.coeffs.adjoint();
        CHECK((b.matrix - proj).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("balanced mixture is a valid state") {
        const MixtureSpec spec{0.5, d, Complex(1e-3, 0.0), kPi / 8.0, cutoff};
        const auto s = build_mixture(spec);
        require_valid_state(s);
        CHECK(s.matrix.trace().real() == Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("invalid parameters are rejected") {
        MixtureSpec bad{1.5, d, Complex(1e-3, 0.0), kPi / 8.0, cutoff};
        CHECK_THROWS_AS(bad.validate(), InvalidParameter);
        MixtureSpec bad2{0.5, d, Complex(1.2, 0.0), kPi / 8.0, cutoff};
        CHECK_THROWS_AS(bad2.validate(), InvalidParameter);
        MixtureSpec bad3{0.5, d, Complex(0.5, 0.0), kPi / 3.0, cutoff};
        CHECK_THROWS_AS(bad3.validate(), InvalidParameter);
    }
}

TEST_CASE("local filter") {
    const FockCutoff cutoff(40);

    SUBCASE("identity at nbar = 1") {
        const auto d = shifted_thermal_distribution(1.0, cutoff);
        const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
        const auto filtered = apply_local_filter(rho, 1.0);
        CHECK((filtered.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-13);
    }

    SUBCASE("nbar = 2 maps onto the canonical nbar = 1 form") {
        const auto d2 = shifted_thermal_distribution(2.0, cutoff);
        const auto rho2 = beam_split_diagonal_state(d2, kPi / 4.0);
        const auto filtered = apply_local_filter(rho2, 2.0);
        const auto d1 = shifted_thermal_distribution(1.0, cutoff);
        const auto rho1 = beam_split_diagonal_state(d1, kPi / 4.0);
        CHECK((filtered.matrix - rho1.matrix).cwiseAbs().maxCoeff() < 1e-8);
    }

    SUBCASE("overflow guard reports the admissible cutoff") {
        const auto d = shifted_thermal_distribution(1.0, cutoff);
        const auto rho = beam_split_diagonal_state(d, kPi / 4.0);
        try {
            apply_local_filter(rho, 1e-9); // huge weights at n_max = 40
            FAIL("expected Overflow");
        } catch (const Overflow& e) {
            CHECK(e.max_admissible_n >= 2);
            CHECK(e.max_admissible_n < 40);
        }
    }
}
