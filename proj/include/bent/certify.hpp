#ifndef BENT_CERTIFY_HPP
#define BENT_CERTIFY_HPP

// Batch certification pipeline: configuration parsing, the single-state
// certification run (state construction, transposition verdicts, Hankel and
// Gerschgorin diagnostics, range search), parameter sweeps with a CSV
// summary, and squeezing-boundary bisection. Reports are JSON trees with
// deterministic serialization; wall-clock data lives under "meta" so that
// reports from identical configurations are byte-identical elsewhere.

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bent/fock.hpp"
#include "bent/range_search.hpp"
#include "bent/states.hpp"

namespace bent {

using Report = nlohmann::json;

struct ToleranceSet {
    double herm = 1e-10;
    double trace = 1e-10;
    double norm = 1e-10;
    double dep = 1e-12;
    double leak = 1e-12;
    double psd_rel = 1e-10;          // PSD threshold, relative to block diagonals
    double overlap_margin = 1e-4;    // scaled by |omega|^2 in the verdict table
    double contradiction_floor = 1e-12;
};

struct CertifyConfig {
    // state
    double nbar = 1.0;
    DistributionKind variant = DistributionKind::shifted_thermal;
    double lambda = 0.5;
    double omega_magnitude = 1e-3;
    double omega_phase = 0.0;
    double theta2 = 0.39269908169872414; // pi/8
    // numerics
    int n_max = 40;
    int hankel_order = 0; // 0 = min(n_max/2, 20)
    ToleranceSet tol;
    // range search (its own, smaller cutoff)
    RangeSearchOptions range;
    int range_n_max = 10;
    // outputs
    std::string report_path;
    bool dump_matrices = false;

    PhotonDistribution make_distribution(int n_max_override) const;
    MixtureSpec to_spec(int n_max_override = 0) const;
    Report echo() const; // normalized configuration as written into reports
};

CertifyConfig parse_config(const Report& j);
CertifyConfig load_config(const std::filesystem::path& path);

enum class Verdict {
    ppt_and_entangled_evidence, // bound-entanglement candidate
    npt,
    ppt_no_entanglement_evidence,
    inconclusive,
};

const char* to_string(Verdict v);

// Full pipeline on one configuration. Exit semantics are the caller's
// business: this returns a report for every completed run regardless of the
// physical verdict and throws only on real errors.
Report run_certify(const CertifyConfig& cfg,
                   const std::optional<std::filesystem::path>& dump_dir = {});

struct SweepGrid {
    std::vector<double> omega;
    std::vector<double> lambda;
    std::vector<double> nbar;
    std::vector<double> theta2;
    std::vector<int> n_max;
    std::optional<std::pair<double, double>> bisect_bracket;

    bool empty_axes() const {
        return omega.empty() && lambda.empty() && nbar.empty() && theta2.empty() &&
               n_max.empty();
    }
};

SweepGrid parse_grid(const Report& j);

struct SweepOutcome {
    std::vector<Report> reports; // grid order
    std::string csv;             // one summary row per grid point
};

// Cartesian product over the provided axes; absent axes keep the base value.
// Points run concurrently up to the BENT_MAX_WORKERS cap, results aggregate
// in grid order. Throws ConfigError on an empty grid.
SweepOutcome run_sweep(const CertifyConfig& base, const SweepGrid& grid);

struct BisectionOutcome {
    double boundary;  // empirical PPT/NPT boundary in |omega|, 3 significant figures
    double lo, hi;    // final bracket (lo certified PPT, hi NPT)
    std::string csv;  // per-iteration trace
};

// Bisects |omega| between a PPT lower and an NPT upper bracket using the
// full-spectrum transposition check at the base configuration's cutoff.
BisectionOutcome bisect_omega(const CertifyConfig& base, double lo, double hi);

// Concurrency cap from BENT_MAX_WORKERS (>=1); defaults to the hardware count.
int worker_cap();

} // namespace bent

#endif
