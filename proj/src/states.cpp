#include "bent/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bent {

namespace {

constexpr double kPi = std::numbers::pi;

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

PhotonDistribution finalize(RealVector probs, DistributionKind kind, double nbar,
                            double tail, FockCutoff cutoff) {
    const double total = probs.sum();
    if (!(total > 0.0))
        throw InvalidParameter("photon distribution has zero total weight");
    probs /= total;
    return PhotonDistribution{std::move(probs), kind, nbar, tail, cutoff};
}

} // namespace

const char* to_string(DistributionKind k) {
    switch (k) {
    case DistributionKind::plain_thermal: return "plain_thermal";
    case DistributionKind::photon_added: return "photon_added";
    case DistributionKind::shifted_thermal: return "shifted_thermal";
    case DistributionKind::custom: return "custom";
    }
    return "unknown";
}

SqueezingParameter SqueezingParameter::checked(Complex w) {
    const double mag = std::abs(w);
    if (!(mag > 0.0) || !(mag < 1.0))
        throw InvalidParameter("squeezing parameter magnitude must lie in (0,1), got " +
                               std::to_string(mag));
    return SqueezingParameter{w};
}

BeamSplitterAngle BeamSplitterAngle::balanced() { return {kPi / 4.0}; }

BeamSplitterAngle BeamSplitterAngle::mixing(double theta) {
    if (!(theta > 0.0) || !(theta < kPi / 4.0))
        throw InvalidParameter("mixing angle must lie strictly in (0, pi/4), got " +
                               std::to_string(theta));
    return {theta};
}

void MixtureSpec::validate() const {
    if (!(lambda >= 0.0) || !(lambda <= 1.0))
        throw InvalidParameter("lambda must lie in [0,1], got " + std::to_string(lambda));
    const double mag = std::abs(omega);
    if (!(mag < 1.0))
        throw InvalidParameter("|omega| must be < 1, got " + std::to_string(mag));
    BeamSplitterAngle::mixing(theta2);
    if (!(distribution.cutoff == cutoff))
        throw InvalidParameter("distribution cutoff differs from spec cutoff");
    if (distribution.probs.minCoeff() < 0.0)
        throw InvalidParameter("distribution has negative weights");
}

PhotonDistribution thermal_distribution(double nbar, FockCutoff cutoff) {
    if (!(nbar > 0.0))
        throw InvalidParameter("thermal distribution requires nbar > 0");
    const double q = nbar / (nbar + 1.0);
    RealVector p(cutoff.dim());
    double w = 1.0 / (nbar + 1.0); // p_0
    for (int n = 0; n <= cutoff.n_max; ++n, w *= q)
        p(n) = w;
    const double tail = std::pow(q, cutoff.n_max + 1);
    return finalize(std::move(p), DistributionKind::plain_thermal, nbar, tail, cutoff);
}

PhotonDistribution shifted_thermal_distribution(double nbar, FockCutoff cutoff) {
    if (!(nbar > 0.0))
        throw InvalidParameter("shifted thermal distribution requires nbar > 0");
    const double q = nbar / (nbar + 1.0);
    RealVector p = RealVector::Zero(cutoff.dim());
    double w = 1.0 / (nbar + 1.0);
    for (int n = 1; n <= cutoff.n_max; ++n, w *= q)
        p(n) = w;
    const double tail = std::pow(q, cutoff.n_max);
    return finalize(std::move(p), DistributionKind::shifted_thermal, nbar, tail, cutoff);
}

PhotonDistribution photon_added_thermal_distribution(double nbar, FockCutoff cutoff) {
    if (!(nbar > 0.0))
        throw InvalidParameter("photon-added thermal distribution requires nbar > 0");
    const double q = nbar / (nbar + 1.0);
    RealVector p = RealVector::Zero(cutoff.dim());
    double thermal = 1.0 / (nbar + 1.0); // plain thermal p_n
    double kept = 0.0;
    for (int n = 1; n <= cutoff.n_max; ++n, thermal *= q) {
        p(n) = n * thermal / (nbar + 1.0); // (n-1+1) p_{n-1} / (nbar+1)
        kept += p(n);
    }
    // normalization of the untruncated map is exact: sum (n+1) p_n = nbar+1
    const double tail = 1.0 - kept;
    return finalize(std::move(p), DistributionKind::photon_added, nbar, tail, cutoff);
}

PhotonDistribution custom_distribution(RealVector weights, FockCutoff cutoff, double tail_mass) {
    if (weights.size() != cutoff.dim())
        throw InvalidParameter("custom distribution length does not match cutoff");
    if (weights.minCoeff() < 0.0)
        throw InvalidParameter("custom distribution has negative weights");
    return finalize(std::move(weights), DistributionKind::custom, 0.0, tail_mass, cutoff);
}

TwoModeVector beam_split_number_state(int n, double theta, FockCutoff cutoff) {
    if (n < 0 || n > cutoff.n_max)
        throw CutoffExceeded("beam_split_number_state: n = " + std::to_string(n) +
                             " exceeds cutoff " + std::to_string(cutoff.n_max));
    Vector v = Vector::Zero(cutoff.pair_dim());
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (int l = 0; l <= n; ++l) {
        const double amp = std::exp(0.5 * log_choose(n, l)) *
                           std::pow(c, l) * std::pow(s, n - l);
        v(cutoff.index(l, n - l)) = amp;
    }
    return {std::move(v), cutoff};
}

TwoModeState beam_split_diagonal_state(const PhotonDistribution& d, double theta) {
    const FockCutoff cutoff = d.cutoff;
    Matrix rho = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
    for (int n = 0; n <= cutoff.n_max; ++n) {
        if (d.probs(n) == 0.0)
            continue;
        const TwoModeVector psi = beam_split_number_state(n, theta, cutoff);
        rho.noalias() += d.probs(n) * (psi.coeffs * psi.coeffs.adjoint());
    }
    return trace_and_renormalize(TwoModeState{std::move(rho), cutoff, d.tail_mass});
}

namespace {

// Raw squeezed-vacuum amplitudes up to 2k <= n_max; no norm/parameter policy.
std::vector<Complex> squeezed_amplitudes(Complex omega, int n_max) {
    std::vector<Complex> c;
    Complex ck = std::pow(1.0 - std::norm(omega), 0.25);
    for (int k = 0; 2 * k <= n_max; ++k) {
        c.push_back(ck);
        ck *= omega * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0)) / (2.0 * (k + 1.0));
    }
    return c;
}

} // namespace

SingleModeVector squeezed_vacuum_coefficients(Complex omega, FockCutoff cutoff) {
    SqueezingParameter::checked(omega);
    Vector v = Vector::Zero(cutoff.dim());
    const auto amps = squeezed_amplitudes(omega, cutoff.n_max);
    for (int k = 0; k < static_cast<int>(amps.size()); ++k)
        v(2 * k) = amps[k];
    return {std::move(v), cutoff};
}

TwoModeVector build_omega_state(Complex omega, double theta2, FockCutoff cutoff) {
    BeamSplitterAngle::mixing(theta2);
    Vector v = Vector::Zero(cutoff.pair_dim());
    if (omega == 0.0) {
        v(cutoff.index(0, 0)) = 1.0; // degenerate limit: plain vacuum
        return {std::move(v), cutoff};
    }
    const double mag = std::abs(omega);
    if (!(mag < 1.0))
        throw InvalidParameter("|omega| must be < 1, got " + std::to_string(mag));
    const auto amps = squeezed_amplitudes(omega, cutoff.n_max);
    for (int k = 0; k < static_cast<int>(amps.size()); ++k) {
        const TwoModeVector phi = beam_split_number_state(2 * k, theta2, cutoff);
        v += amps[k] * phi.coeffs;
    }
    v /= v.norm();
    return {std::move(v), cutoff};
}

TwoModeState build_mixture(const MixtureSpec& spec) {
    spec.validate();
    const FockCutoff cutoff = spec.cutoff;
    Matrix rho = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
    double tail = 0.0;
    if (spec.lambda > 0.0) {
        const TwoModeState split = beam_split_diagonal_state(spec.distribution, kPi / 4.0);
        rho += spec.lambda * split.matrix;
        tail += spec.lambda * split.tail_mass;
    }
    if (spec.lambda < 1.0) {
        const TwoModeVector om = build_omega_state(spec.omega, spec.theta2, cutoff);
        rho.noalias() += (1.0 - spec.lambda) * (om.coeffs * om.coeffs.adjoint());
        // |Omega> is renormalized after truncation, so its tail contributes no
        // trace deficit; report the squeezed-series remainder for audit anyway
        double kept = 0.0;
        for (const auto& a : squeezed_amplitudes(spec.omega, cutoff.n_max))
            kept += std::norm(a);
        tail += (1.0 - spec.lambda) * std::max(0.0, 1.0 - kept);
    }
    return trace_and_renormalize(TwoModeState{std::move(rho), cutoff, tail});
}

TwoModeState apply_local_filter(const TwoModeState& state, double nbar) {
    if (!(nbar > 0.0))
        throw InvalidParameter("local filter requires nbar > 0");
    require_valid_state(state);
    const FockCutoff cutoff = state.cutoff;
    const double log_base = std::log((nbar + 1.0) / (2.0 * nbar));
    const double log_front = 0.5 * std::log(nbar + 1.0);

    // a matrix entry picks up four filter weights, extreme magnitude
    // exp(4*log_front + 2*n_max*|log_base|) at the cutoff corner
    const double entry_extreme = 4.0 * log_front + 2.0 * cutoff.n_max * std::abs(log_base);
    const double log_max = std::log(std::numeric_limits<double>::max());
    if (entry_extreme > log_max) {
        const int admissible = std::abs(log_base) == 0.0
            ? cutoff.n_max
            : static_cast<int>(std::floor((log_max / 2.0 - 2.0 * log_front) /
                                          std::abs(log_base)));
        throw Overflow("local filter weights exceed double range at n_max = " +
                           std::to_string(cutoff.n_max) + "; max admissible n_max = " +
                           std::to_string(admissible),
                       admissible);
    }

    RealVector pair_weight(cutoff.pair_dim());
    for (int a = 0; a < cutoff.dim(); ++a)
        for (int b = 0; b < cutoff.dim(); ++b)
            pair_weight(cutoff.index(a, b)) =
                std::exp(2.0 * log_front + 0.5 * (a + b) * log_base);

    Matrix out = pair_weight.asDiagonal() * state.matrix * pair_weight.asDiagonal();
    return trace_and_renormalize(TwoModeState{std::move(out), cutoff, state.tail_mass});
}

} // namespace bent
