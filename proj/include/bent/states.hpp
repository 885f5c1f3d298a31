#ifndef BENT_STATES_HPP
#define BENT_STATES_HPP

// Factory for every distribution and state the toolkit certifies: thermal /
// photon-added / shifted-thermal photocount distributions, the beam-splitter
// image of |n,0>, two-mode diagonal outputs, the squeezed vacuum and its
// beam-split version, convex mixtures of the two, and the local filter that
// maps any mean photon number onto the canonical nbar=1 form.

#include <complex>

#include "bent/fock.hpp"

namespace bent {

enum class DistributionKind { plain_thermal, photon_added, shifted_thermal, custom };

const char* to_string(DistributionKind k);

// Single-mode diagonal photon-number distribution truncated at the cutoff and
// renormalized; tail_mass is the probability dropped by the truncation.
struct PhotonDistribution {
    RealVector probs; // length n_max+1, nonnegative, sums to 1
    DistributionKind variant = DistributionKind::custom;
    double nbar = 0.0; // mean thermal photon number when applicable
    double tail_mass = 0.0;
    FockCutoff cutoff;
};

// Squeezing parameter, 0 < |omega| < 1.
struct SqueezingParameter {
    Complex omega;
    static SqueezingParameter checked(Complex w);
};

// Beam-splitter mixing angle. The balanced splitter is fixed at pi/4; the
// second splitter must sit strictly inside (0, pi/4).
struct BeamSplitterAngle {
    double theta;
    static BeamSplitterAngle balanced(); // pi/4
    static BeamSplitterAngle mixing(double theta); // validated (0, pi/4)
};

// Full parameter set for the mixed two-mode state
//   rho' = lambda * rho + (1-lambda) |Omega><Omega|.
// omega = 0 is accepted as the degenerate vacuum limit (|Omega> = |0,0>);
// the certification presets use 0 < |omega| < 1.
struct MixtureSpec {
    double lambda;
    PhotonDistribution distribution;
    Complex omega;
    double theta2;
    FockCutoff cutoff;

    void validate() const;
};

// p_n = nbar^n / (nbar+1)^(n+1), renormalized; tail = (nbar/(nbar+1))^(n_max+1).
PhotonDistribution thermal_distribution(double nbar, FockCutoff cutoff);

// p_0 = 0, p_{n+1} = (1/(nbar+1)) (nbar/(nbar+1))^n.
PhotonDistribution shifted_thermal_distribution(double nbar, FockCutoff cutoff);

// First-order heralded photon addition: p'_0 = 0, p'_{n+1} = (n+1) p_n / (nbar+1)
// with p_n the plain thermal weights.
PhotonDistribution photon_added_thermal_distribution(double nbar, FockCutoff cutoff);

// Arbitrary nonnegative weights, renormalized. tail_mass recorded as given.
PhotonDistribution custom_distribution(RealVector weights, FockCutoff cutoff,
                                       double tail_mass = 0.0);

// Beam-splitter image of |n,0>: sum_l C(n,l)^{1/2} cos^l(theta) sin^{n-l}(theta) |l,n-l>.
// Closed-form binomial expansion (log-space square roots), exactly normalized.
TwoModeVector beam_split_number_state(int n, double theta, FockCutoff cutoff);

// rho = sum_n p_n |psi_n><psi_n| with |psi_n> the beam-split |n,0>.
// Unit trace after renormalization; the nonzero spectrum equals {p_n}.
TwoModeState beam_split_diagonal_state(const PhotonDistribution& d, double theta);

// Squeezed-vacuum amplitudes: support on even Fock states only, coefficient on
// |2k> equal to (1-|w|^2)^{1/4} sqrt((2k)!)/(2^k k!) w^k, via the stable ratio
// c_{k+1}/c_k = w sqrt((2k+1)(2k+2)) / (2(k+1)). Requires 0 < |w| < 1.
SingleModeVector squeezed_vacuum_coefficients(Complex omega, FockCutoff cutoff);

// |Omega> = sum_k c_k |phi_{2k}> with c_k the squeezed-vacuum amplitudes and
// |phi_{2k}> the beam-split |2k,0> at theta2 in (0, pi/4) strictly. Normalized
// after truncation. omega = 0 yields |0,0> (the continuous limit).
TwoModeVector build_omega_state(Complex omega, double theta2, FockCutoff cutoff);

TwoModeState build_mixture(const MixtureSpec& spec);

// (T x T) rho (T^dag x T^dag) / trace with T|n> = (nbar+1)^{1/2} ((nbar+1)/(2 nbar))^{n/2} |n>.
// Throws Overflow when the filter weights leave the double range at the cutoff.
TwoModeState apply_local_filter(const TwoModeState& state, double nbar);

} // namespace bent

#endif
