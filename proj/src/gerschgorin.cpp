#include "bent/gerschgorin.hpp"

#include "bent/partial_transpose.hpp"

#include <cmath>
#include <set>

namespace bent {

namespace {

RealVector deleted_row_sums(const Matrix& m) {
    RealVector r(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < m.cols(); ++j)
            if (j != i)
                sum += std::abs(m(i, j));
        r(i) = sum;
    }
    return r;
}

} // namespace

GerschgorinReport gerschgorin_discs(const Matrix& m,
                                    const std::optional<RealVector>& scaling) {
    if (hermiticity_residual(m) > tol::herm)
        throw NonHermitian("gerschgorin_discs: input is not hermitian");

    const int n = static_cast<int>(m.rows());
    GerschgorinReport report;
    report.discs.reserve(n);
    const RealVector raw = deleted_row_sums(m);
    for (int i = 0; i < n; ++i)
        report.discs.push_back({m(i, i).real(), raw(i)});

    if (scaling) {
        if (scaling->size() != n)
            throw InvalidScaling("scaling length does not match matrix dimension");
        if (scaling->minCoeff() <= 0.0)
            throw InvalidScaling("scaling entries must be strictly positive");
        std::vector<GerschgorinDisc> scaled;
        scaled.reserve(n);
        for (int i = 0; i < n; ++i) {
            double sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    sum += (*scaling)(j) * std::abs(m(i, j));
            scaled.push_back({m(i, i).real(), sum / (*scaling)(i)});
        }
        report.scaled = std::move(scaled);
    }

    const auto& effective = report.scaled ? *report.scaled : report.discs;
    report.min_disc_edge = std::numeric_limits<double>::infinity();
    for (const auto& disc : effective)
        report.min_disc_edge = std::min(report.min_disc_edge, disc.center - disc.radius);
    return report;
}

std::optional<PositivityCertificate>
scaled_positivity_search(const Matrix& m, int max_rounds, double null_rel_tol) {
    if (hermiticity_residual(m) > tol::herm)
        throw NonHermitian("scaled_positivity_search: input is not hermitian");

    const int n = static_cast<int>(m.rows());
    const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    const double null_tol = null_rel_tol * scale;

    const RealVector radius = deleted_row_sums(m);
    std::vector<bool> active(n);
    int null_rows = 0;
    for (int i = 0; i < n; ++i) {
        const double center = m(i, i).real();
        const bool is_null = center <= null_tol && radius(i) <= null_tol;
        active[i] = !is_null;
        if (is_null)
            ++null_rows;
        else if (center <= 0.0)
            return std::nullopt; // a nonpositive center can never dominate
    }

    RealVector d(n);
    for (int i = 0; i < n; ++i)
        d(i) = active[i] ? m(i, i).real() + null_tol : 1.0;

    auto scaled_radius = [&](int i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                sum += d(j) * std::abs(m(i, j));
        return sum / d(i);
    };

    for (int round = 0; round < max_rounds; ++round) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (active[i] && scaled_radius(i) > m(i, i).real())
                ok = false;
        if (ok) {
            double min_edge = std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i)
                if (active[i])
                    min_edge = std::min(min_edge, m(i, i).real() - scaled_radius(i));
            if (null_rows == n)
                min_edge = 0.0;
            return PositivityCertificate{d, min_edge, null_rows, null_tol};
        }
        // push each weight toward its row-sum ratio; converges exactly when a
        // dominating scaling exists
        RealVector next = d;
        double top = 0.0;
        for (int i = 0; i < n; ++i) {
            if (active[i])
                next(i) = d(i) * std::max(scaled_radius(i) / m(i, i).real(), 1e-6) +
                          null_tol;
            top = std::max(top, next(i));
        }
        d = next / top;
    }
    return std::nullopt;
}

OmegaBound omega_upper_bound(const PhotonDistribution& d, double lambda) {
    if (d.cutoff.n_max < 2 || !(d.probs(1) > 0.0) || !(d.probs(2) > 0.0))
        throw InvalidParameter("omega_upper_bound: p_1 and p_2 must be positive");
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw InvalidParameter("omega_upper_bound: lambda must lie strictly in (0,1)");

    OmegaBound ob;
    ob.floor_p2_quarter = d.probs(2) / 4.0;
    ob.floor_p1_half = d.probs(1) / 2.0;
    ob.safety_exponent = 1;
    const double floor_term = std::min(ob.floor_p2_quarter, ob.floor_p1_half);
    ob.bound = std::pow(10.0, std::floor(std::log10(floor_term)) - ob.safety_exponent);
    ob.vacuum_floor = std::sqrt(1.0 - ob.bound * ob.bound);
    return ob;
}

namespace {

// Raw index transform <a,b|out|c,d> = <a,d|in|c,b> on a plain matrix.
Matrix pt_matrix(const Matrix& m, FockCutoff cutoff) {
    const int d = cutoff.dim();
    Matrix out(m.rows(), m.cols());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e)
                    out(cutoff.index(a, b), cutoff.index(c, e)) =
                        m(cutoff.index(a, e), cutoff.index(c, b));
    return out;
}

} // namespace

PerturbationAudit perturbation_audit(const MixtureSpec& spec) {
    spec.validate();
    if (!(spec.lambda > 0.0))
        throw InvalidParameter("perturbation_audit requires lambda > 0");

    const FockCutoff cutoff = spec.cutoff;
    const double lambda = spec.lambda;
    const double mu = (1.0 - lambda) / lambda;
    const double omega_mag = std::abs(spec.omega);

    const TwoModeState mixture = build_mixture(spec);
    const TwoModeState pt = partial_transpose_B(mixture);

    const TwoModeState unmixed =
        beam_split_diagonal_state(spec.distribution, std::numbers::pi / 4.0);
    const TwoModeState pt_unmixed = partial_transpose_B(unmixed);

    // first-order model: unperturbed blocks + vacuum replacement + cross term
    const Complex c0 = std::pow(1.0 - std::norm(spec.omega), 0.25);
    const Complex c1 = c0 * spec.omega / std::sqrt(2.0);
    Matrix model = lambda * pt_unmixed.matrix;
    const int vac = cutoff.index(0, 0);
    model(vac, vac) += (1.0 - lambda) * std::norm(c0);
    Matrix cross = Matrix::Zero(cutoff.pair_dim(), cutoff.pair_dim());
    if (spec.omega != 0.0) {
        Vector phi0 = Vector::Zero(cutoff.pair_dim());
        phi0(vac) = 1.0;
        const Vector phi2 = beam_split_number_state(2, spec.theta2, cutoff).coeffs;
        Matrix raw = c1 * std::conj(c0) * (phi2 * phi0.adjoint()) +
                     c0 * std::conj(c1) * (phi0 * phi2.adjoint());
        cross = pt_matrix(raw, cutoff);
        model += (1.0 - lambda) * cross;
    }

    PerturbationAudit audit;
    audit.remainder_max = (pt.matrix - model).cwiseAbs().maxCoeff();
    audit.normalization = 1.0 / lambda;

    // the cross perturbation may touch only the lead basis vector of the
    // blocks delta in {0, +-1, +-2}
    const std::set<int> allowed = {cutoff.index(0, 0), cutoff.index(1, 0),
                                   cutoff.index(0, 1), cutoff.index(2, 0),
                                   cutoff.index(0, 2)};
    audit.perturbation_confined = true;
    for (int i = 0; i < cross.rows() && audit.perturbation_confined; ++i)
        for (int j = 0; j < cross.cols(); ++j)
            if (cross(i, j) != Complex(0.0) &&
                (!allowed.contains(i) || !allowed.contains(j))) {
                audit.perturbation_confined = false;
                break;
            }

    const std::vector<std::pair<int, std::pair<int, int>>> spotlight = {
        {0, {0, 0}}, {1, {1, 0}}, {-1, {0, 1}}, {2, {2, 0}}, {-2, {0, 2}}};
    for (const auto& [delta, label] : spotlight) {
        const int row = cutoff.index(label.first, label.second);

        SpotlightRow sr;
        sr.delta = delta;
        sr.label = label;
        sr.center = pt.matrix(row, row).real() / lambda;

        double actual = 0.0;
        for (int j = 0; j < pt.matrix.cols(); ++j)
            if (j != row)
                actual += std::abs(pt.matrix(row, j));
        sr.radius_actual = actual / lambda;

        const auto basis = PTBlockDecomposition::block_basis(delta, cutoff);
        double unpert = 0.0;
        for (std::size_t c = 1; c < basis.size(); ++c)
            unpert += std::abs(pt_unmixed.matrix(
                row, cutoff.index(basis[c].first, basis[c].second)));
        sr.radius_unperturbed = unpert;

        const double flat = (delta == 0 ? 2.0 : 1.0) * omega_mag;
        sr.radius_paper = unpert + mu * flat;
        sr.slack = sr.radius_paper - sr.radius_actual;
        sr.left_edge_actual = sr.center - sr.radius_actual;
        sr.left_edge_paper = sr.center - sr.radius_paper;
        audit.rows.push_back(sr);
    }
    return audit;
}

} // namespace bent
