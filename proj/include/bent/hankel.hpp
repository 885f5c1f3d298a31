#ifndef BENT_HANKEL_HPP
#define BENT_HANKEL_HPP

// Hankel-matrix route to the transposition verdict: the matrices A_i built
// from photocount probabilities, the coefficient matrices B_i and their
// factorization into six Hadamard factors, Sylvester leading-minor
// diagnostics with exact integer arithmetic, and the reconstruction
// M_i = A_i o B_i that cross-checks the directly extracted blocks.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <vector>

#include "bent/fock.hpp"
#include "bent/states.hpp"

namespace bent {

using BigInt = boost::multiprecision::cpp_int;

inline int default_hankel_order(FockCutoff cutoff) {
    return std::min(cutoff.n_max / 2, 20);
}

// A_i[r][c] = p_{i+r+c}; requires i + 2*(order-1) <= n_max so every entry is
// available in the truncated distribution.
RealMatrix hankel_a(const PhotonDistribution& d, int i, int order);

struct HankelFamily {
    int order;
    std::map<int, RealMatrix> a;
    std::map<int, RealMatrix> b;
};

HankelFamily build_hankel_family(const PhotonDistribution& d, int max_index, int order);

struct SylvesterReport {
    bool psd;                   // from the eigenvalue check (authoritative)
    double min_eigenvalue;
    double psd_tol;
    std::vector<double> minors; // leading principal minors, orders 1..K
    int first_failing_minor;    // 1-based order of first clearly negative minor, 0 if none
};

SylvesterReport sylvester_psd_test(const RealMatrix& m, double psd_rel = 1e-10);

// Positive semidefiniteness of A_0 built from d; sufficient for the
// beam-split output of d to stay positive under partial transposition.
SylvesterReport proposition1_ppt_test(const PhotonDistribution& d, int order);

// c^{(n)}_{k,k'} = 2^{-n} sqrt(C(n,k) C(n,k')), the coefficient of
// |k,n-k><k',n-k'| in the balanced beam-splitter image of |n><n| x vacuum.
double block_coefficient(int n, int k, int kp);

struct HadamardFactors {
    RealMatrix c; // (j+r+c)!
    RealMatrix d; // 2^{-(j+r+c)}, rank 1
    RealMatrix e; // 1/sqrt(r!), rank 1
    RealMatrix f; // 1/sqrt((j+r)!), rank 1
    bool c_exact; // factorials stayed within exact integer range (<= 20!)
};

HadamardFactors hadamard_factors(int j, int order);

// B_j as the entrywise product C o D o E o E^T o F o F^T.
RealMatrix reconstruct_b(int j, int order);

// B_j from the coefficient formula directly: B_j[r][c] = c^{(j+r+c)}_{j+r,r}.
RealMatrix direct_b(int j, int order);

// A_i o B_i; matches the block at delta = +/-i extracted from the transposed
// beam-split state of d.
RealMatrix reconstruct_block_from_hankel(const PhotonDistribution& d, int i, int order);

// Leading principal minors of the factorial Hankel matrix C_j, orders
// 1..order, computed exactly (fraction-free elimination; 64-bit fast path
// with big-integer fallback).
std::vector<BigInt> exact_leading_minors_c(int j, int order);

} // namespace bent

#endif
