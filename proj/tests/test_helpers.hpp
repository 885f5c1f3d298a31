#ifndef BENT_TEST_HELPERS_HPP
#define BENT_TEST_HELPERS_HPP

#include <random>

#include "bent/fock.hpp"

namespace bent_test {

// Seeded dense random matrices for property tests.
inline bent::Matrix random_complex(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    bent::Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m(i, j) = bent::Complex(u(rng), u(rng));
    return m;
}

inline bent::Matrix random_hermitian(int n, std::mt19937_64& rng) {
    bent::Matrix m = random_complex(n, rng);
    return 0.5 * (m + m.adjoint()).eval();
}

// Haar-like unitary from the QR factorization of a gaussian matrix.
inline bent::Matrix random_unitary(int n, std::mt19937_64& rng) {
    const bent::Matrix z = random_complex(n, rng);
    Eigen::HouseholderQR<bent::Matrix> qr(z);
    bent::Matrix q = qr.householderQ();
    const bent::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const bent::Complex d = r(i, i);
        if (d != bent::Complex(0.0))
            q.col(i) *= d / std::abs(d);
    }
    return q;
}

} // namespace bent_test

#endif
