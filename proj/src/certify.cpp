#include "bent/certify.hpp"

#include "bent/gerschgorin.hpp"
#include "bent/hankel.hpp"
#include "bent/matrix_io.hpp"
#include "bent/partial_transpose.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <thread>

namespace bent {

namespace {

double get_number(const Report& j, const std::string& key, double fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number())
        throw ConfigError("config field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int(const Report& j, const std::string& key, int fallback) {
    if (!j.contains(key))
        return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigError("config field '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

DistributionKind parse_variant(const std::string& name) {
    if (name == "plain_thermal")
        return DistributionKind::plain_thermal;
    if (name == "photon_added")
        return DistributionKind::photon_added;
    if (name == "shifted_thermal")
        return DistributionKind::shifted_thermal;
    throw ConfigError("unknown distribution variant '" + name + "'");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

PhotonDistribution CertifyConfig::make_distribution(int n_max_override) const {
    const FockCutoff cutoff(n_max_override > 0 ? n_max_override : n_max);
    switch (variant) {
    case DistributionKind::plain_thermal:
        return thermal_distribution(nbar, cutoff);
    case DistributionKind::photon_added:
        return photon_added_thermal_distribution(nbar, cutoff);
    case DistributionKind::shifted_thermal:
        return shifted_thermal_distribution(nbar, cutoff);
    case DistributionKind::custom:
        break;
    }
    throw ConfigError("custom distributions are not constructible from a config");
}

MixtureSpec CertifyConfig::to_spec(int n_max_override) const {
    const int n = n_max_override > 0 ? n_max_override : n_max;
    const Complex omega = std::polar(omega_magnitude, omega_phase);
    return MixtureSpec{lambda, make_distribution(n), omega, theta2, FockCutoff(n)};
}

Report CertifyConfig::echo() const {
    Report j;
    j["state"] = {{"nbar", nbar},
                  {"variant", to_string(variant)},
                  {"lambda", lambda},
                  {"omega", {{"magnitude", omega_magnitude}, {"phase", omega_phase}}},
                  {"theta2", theta2}};
    j["numerics"] = {{"n_max", n_max},
                     {"hankel_order", hankel_order},
                     {"tolerances",
                      {{"herm", tol.herm},
                       {"trace", tol.trace},
                       {"norm", tol.norm},
                       {"dep", tol.dep},
                       {"leak", tol.leak},
                       {"psd_rel", tol.psd_rel},
                       {"overlap_margin", tol.overlap_margin},
                       {"contradiction_floor", tol.contradiction_floor}}}};
    j["range_search"] = {{"restarts", range.restarts},
                         {"max_iter", range.max_iter},
                         {"seed", range.seed},
                         {"conv_tol", range.conv_tol},
                         {"n_max", range_n_max}};
    j["outputs"] = {{"report_path", report_path}, {"dump_matrices", dump_matrices}};
    return j;
}

CertifyConfig parse_config(const Report& j) {
    if (!j.is_object())
        throw ConfigError("config root must be an object");
    CertifyConfig cfg;

    if (j.contains("state")) {
        const auto& s = j.at("state");
        cfg.nbar = get_number(s, "nbar", cfg.nbar);
        if (s.contains("variant"))
            cfg.variant = parse_variant(s.at("variant").get<std::string>());
        cfg.lambda = get_number(s, "lambda", cfg.lambda);
        if (s.contains("omega")) {
            const auto& w = s.at("omega");
            if (w.is_number()) {
                cfg.omega_magnitude = w.get<double>();
            } else {
                cfg.omega_magnitude = get_number(w, "magnitude", cfg.omega_magnitude);
                cfg.omega_phase = get_number(w, "phase", cfg.omega_phase);
            }
        }
        cfg.theta2 = get_number(s, "theta2", cfg.theta2);
    }
    if (j.contains("numerics")) {
        const auto& n = j.at("numerics");
        cfg.n_max = get_int(n, "n_max", cfg.n_max);
        cfg.hankel_order = get_int(n, "hankel_order", cfg.hankel_order);
        if (n.contains("tolerances")) {
            const auto& t = n.at("tolerances");
            cfg.tol.herm = get_number(t, "herm", cfg.tol.herm);
            cfg.tol.trace = get_number(t, "trace", cfg.tol.trace);
            cfg.tol.norm = get_number(t, "norm", cfg.tol.norm);
            cfg.tol.dep = get_number(t, "dep", cfg.tol.dep);
            cfg.tol.leak = get_number(t, "leak", cfg.tol.leak);
            cfg.tol.psd_rel = get_number(t, "psd_rel", cfg.tol.psd_rel);
            cfg.tol.overlap_margin = get_number(t, "overlap_margin", cfg.tol.overlap_margin);
            cfg.tol.contradiction_floor =
                get_number(t, "contradiction_floor", cfg.tol.contradiction_floor);
        }
    }
    if (j.contains("range_search")) {
        const auto& r = j.at("range_search");
        cfg.range.restarts = get_int(r, "restarts", cfg.range.restarts);
        cfg.range.max_iter = get_int(r, "max_iter", cfg.range.max_iter);
        if (r.contains("seed"))
            cfg.range.seed = r.at("seed").get<std::uint64_t>();
        cfg.range.conv_tol = get_number(r, "conv_tol", cfg.range.conv_tol);
        cfg.range_n_max = get_int(r, "n_max", cfg.range_n_max);
    }
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        if (o.contains("report_path"))
            cfg.report_path = o.at("report_path").get<std::string>();
        if (o.contains("dump_matrices"))
            cfg.dump_matrices = o.at("dump_matrices").get<bool>();
    }

    if (cfg.n_max < 2)
        throw ConfigError("numerics.n_max must be >= 2");
    if (cfg.range_n_max < 2)
        throw ConfigError("range_search.n_max must be >= 2");
    if (cfg.range.restarts < 1)
        throw ConfigError("range_search.restarts must be >= 1");
    try {
        cfg.to_spec(); // surfaces invalid physics parameters early
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("invalid state parameters: ") + e.what());
    }
    return cfg;
}

CertifyConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    Report j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::ppt_and_entangled_evidence: return "PPT_AND_ENTANGLED_EVIDENCE";
    case Verdict::npt: return "NPT";
    case Verdict::ppt_no_entanglement_evidence: return "PPT_NO_ENTANGLEMENT_EVIDENCE";
    case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

namespace {

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Report audit_to_json(const PerturbationAudit& audit) {
    Report rows = Report::array();
    for (const auto& r : audit.rows)
        rows.push_back({{"delta", r.delta},
                        {"label", {r.label.first, r.label.second}},
                        {"center", r.center},
                        {"radius_actual", r.radius_actual},
                        {"radius_unperturbed", r.radius_unperturbed},
                        {"radius_paper", r.radius_paper},
                        {"slack", r.slack},
                        {"left_edge_actual", r.left_edge_actual},
                        {"left_edge_paper", r.left_edge_paper}});
    return {{"rows", rows},
            {"remainder_max", audit.remainder_max},
            {"perturbation_confined", audit.perturbation_confined},
            {"normalization", audit.normalization}};
}

} // namespace

Report run_certify(const CertifyConfig& cfg,
                   const std::optional<std::filesystem::path>& dump_dir) {
    const auto t_start = std::chrono::steady_clock::now();
    Report report;
    report["config"] = cfg.echo();

    const MixtureSpec spec = cfg.to_spec();
    const TwoModeState state = build_mixture(spec);
    const TwoModeState split_component =
        beam_split_diagonal_state(spec.distribution, std::numbers::pi / 4.0);

    report["state_stats"] = {
        {"trace", state.matrix.trace().real()},
        {"tail_mass", state.tail_mass},
        {"swap_residual_mixture", swap_invariance_residual(state)},
        {"swap_residual_split_component", swap_invariance_residual(split_component)}};

    // transposition and block verdicts
    const TwoModeState pt = partial_transpose_B(state);
    PTBlockDecomposition dec = [&] {
        try {
            return block_decompose(pt, cfg.tol.leak);
        } catch (BlockLeakage& leak) {
            return std::move(leak.decomposition);
        }
    }();
    const bool leakage = dec.off_block_residual > cfg.tol.leak;

    const auto minima = min_block_eigenvalues(dec);
    const PptVerdict block_verdict = ppt_from_blocks(dec, minima, cfg.tol.psd_rel);
    const double full_min = min_eigenvalue(pt.matrix, cfg.tol.herm);
    // blocks tell the whole story only without leakage; the full spectrum is
    // always authoritative
    const double authoritative_min = leakage ? full_min : block_verdict.min_eigenvalue;
    const bool ppt = authoritative_min >= -block_verdict.psd_tol;

    Report block_list = Report::array();
    for (const auto& [delta, value] : minima)
        block_list.push_back({{"delta", delta}, {"min_eigenvalue", value}});

    // the unmixed split component and its photocount-matrix counterpart
    const TwoModeState pt_unmixed = partial_transpose_B(split_component);
    const PTBlockDecomposition dec_unmixed = block_decompose(pt_unmixed, cfg.tol.leak);
    const auto minima_unmixed = min_block_eigenvalues(dec_unmixed);
    const PptVerdict unmixed_verdict =
        ppt_from_blocks(dec_unmixed, minima_unmixed, cfg.tol.psd_rel);
    const int hankel_order = cfg.hankel_order > 0 ? cfg.hankel_order
                                                  : default_hankel_order(spec.cutoff);
    const SylvesterReport hankel = proposition1_ppt_test(spec.distribution, hankel_order);

    report["ppt"] = {
        {"off_block_residual", dec.off_block_residual},
        {"leakage", leakage},
        {"block_minima", block_list},
        {"worst_block",
         {{"delta", block_verdict.worst_delta},
          {"min_eigenvalue", block_verdict.min_eigenvalue}}},
        {"full_min_eigenvalue", full_min},
        {"psd_tol", block_verdict.psd_tol},
        {"ppt", ppt},
        {"unmixed",
         {{"min_block_eigenvalue", unmixed_verdict.min_eigenvalue},
          {"worst_delta", unmixed_verdict.worst_delta},
          {"ppt", unmixed_verdict.ppt},
          {"hankel",
           {{"order", hankel_order},
            {"psd", hankel.psd},
            {"min_eigenvalue", hankel.min_eigenvalue},
            {"first_failing_minor", hankel.first_failing_minor}}},
          // one-way sufficiency: a positive photocount matrix must never pair
          // with a negative block verdict
          {"consistency_hankel_implies_ppt", !hankel.psd || unmixed_verdict.ppt}}}};

    // disc diagnostics
    Report gersch;
    try {
        const OmegaBound ob = omega_upper_bound(spec.distribution, spec.lambda);
        gersch["omega_bound"] = {{"bound", ob.bound},
                                 {"floor_p2_quarter", ob.floor_p2_quarter},
                                 {"floor_p1_half", ob.floor_p1_half},
                                 {"vacuum_floor", ob.vacuum_floor},
                                 {"safety_exponent", ob.safety_exponent}};
    } catch (const InvalidParameter& e) {
        gersch["omega_bound"] = nullptr;
        gersch["omega_bound_skipped"] = e.what();
    }
    try {
        gersch["audit"] = audit_to_json(perturbation_audit(spec));
    } catch (const InvalidParameter& e) {
        gersch["audit"] = nullptr;
        gersch["audit_skipped"] = e.what();
    }
    {
        int certified = 0;
        int total = 0;
        for (const auto& [delta, block] : dec.blocks) {
            ++total;
            if (scaled_positivity_search(block))
                ++certified;
        }
        gersch["certificates"] = {{"certified_blocks", certified},
                                  {"total_blocks", total},
                                  {"all_blocks_certified", certified == total}};
    }
    report["gerschgorin"] = gersch;

    // range criterion, on its own (smaller) cutoff
    const MixtureSpec spec_range = cfg.to_spec(cfg.range_n_max);
    const RangeSubspace sub = build_range_subspace(spec_range);
    const RangeSearchResult search = product_vector_search(sub, cfg.range);

    const double omega_mag = cfg.omega_magnitude;
    // fixed margins cannot serve both the near-vacuum and the strongly
    // squeezed regime; the product-manifold gap of this family scales like
    // |omega|^2, so the margin does too (floored at solver noise)
    const double margin_eff =
        std::max(cfg.tol.overlap_margin * omega_mag * omega_mag, 1e-10);
    const bool overlap_evidence = cfg.lambda < 1.0 && omega_mag > 0.0 &&
                                  search.best_overlap < 1.0 - margin_eff;

    Report contradiction = nullptr;
    bool contradiction_evidence = false;
    double contradiction_magnitude = 0.0;
    try {
        const ContradictionReport rep = symbolic_contradiction_check(spec_range);
        contradiction_magnitude = rep.magnitude;
        contradiction_evidence = cfg.lambda < 1.0 && omega_mag > 0.0 &&
                                 rep.magnitude > cfg.tol.contradiction_floor;
        Report higher = Report::array();
        for (const auto& [level, diff] : rep.higher_levels)
            higher.push_back({{"level", level}, {"difference", diff}});
        contradiction = {{"order", rep.order},
                         {"coefficient", rep.coefficient},
                         {"expr_13", rep.expr_13},
                         {"expr_31", rep.expr_31},
                         {"difference", rep.difference},
                         {"closed_form", rep.closed_form},
                         {"magnitude", rep.magnitude},
                         {"higher_levels", higher}};
    } catch (const DegenerateAngle&) {
        // theta = pi/4 never reaches here through a config, but stay safe
    }

    int max_iters = 0;
    for (int it : search.iterations_per_restart)
        max_iters = std::max(max_iters, it);
    report["range"] = {{"n_max", cfg.range_n_max},
                       {"rank", sub.rank},
                       {"idempotency_residual", sub.idempotency_residual()},
                       {"best_overlap", search.best_overlap},
                       {"gap", 1.0 - search.best_overlap},
                       {"restarts", search.restarts},
                       {"max_iterations_used", max_iters},
                       {"converged", search.converged},
                       {"seed", cfg.range.seed},
                       {"overlap_margin_effective", margin_eff},
                       {"overlap_evidence", overlap_evidence},
                       {"contradiction", contradiction},
                       {"contradiction_evidence", contradiction_evidence},
                       {"contradiction_magnitude", contradiction_magnitude}};

    Verdict verdict;
    if (!ppt)
        verdict = Verdict::npt;
    else if (overlap_evidence && contradiction_evidence)
        verdict = Verdict::ppt_and_entangled_evidence;
    else if (!overlap_evidence && !contradiction_evidence)
        verdict = Verdict::ppt_no_entanglement_evidence;
    else
        verdict = Verdict::inconclusive;
    report["verdict"] = to_string(verdict);

    report["versions"] = {{"bent", "1.0.0"},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
#ifdef EIGEN_USE_LAPACKE
                          {"lapacke_backend", true}
#else
                          {"lapacke_backend", false}
#endif
    };

    if (dump_dir) {
        std::filesystem::create_directories(*dump_dir);
        write_matrix(*dump_dir / "rho.bent", state.matrix);
        write_matrix(*dump_dir / "rho_tb.bent", pt.matrix);
        for (const auto& [delta, block] : dec.blocks) {
            const std::string name =
                std::string("block_") + (delta < 0 ? "m" : "p") + std::to_string(std::abs(delta));
            write_matrix(*dump_dir / (name + ".bent"), block);
        }
    }

    const auto t_end = std::chrono::steady_clock::now();
    report["meta"] = {{"timestamp_utc", utc_timestamp()},
                      {"elapsed_seconds",
                       std::chrono::duration<double>(t_end - t_start).count()}};
    return report;
}

SweepGrid parse_grid(const Report& j) {
    if (!j.is_object())
        throw ConfigError("grid root must be an object");
    SweepGrid grid;
    auto fill = [&](const char* key, std::vector<double>& axis) {
        if (!j.contains(key))
            return;
        for (const auto& v : j.at(key))
            axis.push_back(v.get<double>());
    };
    fill("omega", grid.omega);
    fill("lambda", grid.lambda);
    fill("nbar", grid.nbar);
    fill("theta2", grid.theta2);
    if (j.contains("n_max"))
        for (const auto& v : j.at("n_max"))
            grid.n_max.push_back(v.get<int>());
    if (j.contains("bisect")) {
        const auto& b = j.at("bisect");
        grid.bisect_bracket = {b.at("lo").get<double>(), b.at("hi").get<double>()};
    }
    return grid;
}

int worker_cap() {
    if (const char* env = std::getenv("BENT_MAX_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

SweepOutcome run_sweep(const CertifyConfig& base, const SweepGrid& grid) {
    if (grid.empty_axes())
        throw ConfigError("sweep grid has no axes");

    auto axis_or = [](const std::vector<double>& axis, double fallback) {
        return axis.empty() ? std::vector<double>{fallback} : axis;
    };
    const std::vector<double> omegas = axis_or(grid.omega, base.omega_magnitude);
    const std::vector<double> lambdas = axis_or(grid.lambda, base.lambda);
    const std::vector<double> nbars = axis_or(grid.nbar, base.nbar);
    const std::vector<double> thetas = axis_or(grid.theta2, base.theta2);
    const std::vector<int> n_maxes =
        grid.n_max.empty() ? std::vector<int>{base.n_max} : grid.n_max;

    std::vector<CertifyConfig> points;
    for (double w : omegas)
        for (double l : lambdas)
            for (double nb : nbars)
                for (double th : thetas)
                    for (int nm : n_maxes) {
                        CertifyConfig cfg = base;
                        cfg.omega_magnitude = w;
                        cfg.lambda = l;
                        cfg.nbar = nb;
                        cfg.theta2 = th;
                        cfg.n_max = nm;
                        points.push_back(cfg);
                    }

    std::vector<Report> reports(points.size());
    std::atomic<std::size_t> next{0};
    const int workers =
        std::min<int>(worker_cap(), static_cast<int>(points.size()));
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < points.size();
             i = next.fetch_add(1)) {
            try {
                reports[i] = run_certify(points[i]);
            } catch (const std::exception& e) {
                reports[i] = Report{{"error", e.what()},
                                    {"config", points[i].echo()}};
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    std::string csv = "omega,lambda,nbar,theta2,n_max,min_pt_eigenvalue,"
                      "off_block_residual,ppt,best_overlap,"
                      "contradiction_magnitude,verdict\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CertifyConfig& cfg = points[i];
        const Report& r = reports[i];
        csv += format_double(cfg.omega_magnitude) + "," + format_double(cfg.lambda) +
               "," + format_double(cfg.nbar) + "," + format_double(cfg.theta2) + "," +
               std::to_string(cfg.n_max) + ",";
        if (r.contains("error")) {
            csv += ",,,,ERROR:" + r.at("error").get<std::string>() + "\n";
            continue;
        }
        const bool leak = r.at("ppt").at("leakage").get<bool>();
        const double min_eig =
            leak ? r.at("ppt").at("full_min_eigenvalue").get<double>()
                 : r.at("ppt").at("worst_block").at("min_eigenvalue").get<double>();
        csv += format_double(min_eig) + "," +
               format_double(r.at("ppt").at("off_block_residual").get<double>()) + "," +
               (r.at("ppt").at("ppt").get<bool>() ? "true" : "false") + "," +
               format_double(r.at("range").at("best_overlap").get<double>()) + "," +
               format_double(
                   r.at("range").at("contradiction_magnitude").get<double>()) +
               "," + r.at("verdict").get<std::string>() + "\n";
    }
    return SweepOutcome{std::move(reports), std::move(csv)};
}

BisectionOutcome bisect_omega(const CertifyConfig& base, double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo) || !(hi < 1.0))
        throw ConfigError("bisection bracket must satisfy 0 <= lo < hi < 1");

    auto min_pt_eigenvalue = [&](double omega) {
        CertifyConfig cfg = base;
        cfg.omega_magnitude = omega;
        const TwoModeState state = build_mixture(cfg.to_spec());
        const TwoModeState pt = partial_transpose_B(state);
        const double max_diag = pt.matrix.diagonal().real().maxCoeff();
        const double eig = min_eigenvalue(pt.matrix, cfg.tol.herm);
        return std::pair<double, double>(eig, cfg.tol.psd_rel * std::max(max_diag, 1e-300));
    };
    auto is_ppt = [&](double omega, std::string& trace) {
        const auto [eig, psd_tol] = min_pt_eigenvalue(omega);
        const bool ppt = eig >= -psd_tol;
        trace += format_double(omega) + "," + format_double(eig) + "," +
                 (ppt ? "PPT" : "NPT") + "\n";
        return ppt;
    };

    std::string csv = "omega,min_pt_eigenvalue,verdict\n";
    if (!is_ppt(lo, csv))
        throw ConfigError("bisection lower bracket is not PPT");
    if (is_ppt(hi, csv))
        throw ConfigError("bisection upper bracket is not NPT");

    // three significant figures on the boundary
    while (hi - lo > 5e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (is_ppt(mid, csv))
            lo = mid;
        else
            hi = mid;
    }
    return BisectionOutcome{0.5 * (lo + hi), lo, hi, std::move(csv)};
}

} // namespace bent
