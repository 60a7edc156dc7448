#pragma once

// Parallel Monte Carlo experiments: concentration limits, CLT-scale
// covariances, moderate-deviation tail slopes, the exponential inequality
// frequency scan, and truncation diagnostics.  Replica seeds derive from
// (master_seed, replica_index) and aggregation runs in fixed index order,
// so results are bitwise identical for any worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "middev/ledger.hpp"
#include "middev/params.hpp"

namespace middev {

enum class ExperimentKind { Concentration, VarianceMatch, TailSlope, BercuTouati, Truncation };

[[nodiscard]] const char* experiment_name(ExperimentKind kind);
[[nodiscard]] ExperimentKind experiment_from_name(const std::string& name);

struct ExperimentConfig {
    ModelConfig model;
    std::int64_t replicas = 1;
    std::uint64_t master_seed = 1;
    ExperimentKind experiment = ExperimentKind::Concentration;
    std::vector<double> thresholds;      ///< TailSlope x grid (positive)
    std::string statistic = "theta";     ///< TailSlope: theta|rho|d|L|Lambda
    int threads = 0;                     ///< worker count; 0 = hardware (never affects results)
    std::vector<double> bt_x_coeffs = {2.0, 2.75, 3.5};   ///< x = c sqrt(y)
    std::vector<double> bt_y_fracs = {0.75, 1.0, 1.5};    ///< y = f E[<M>+[M]] proxy
    double truncation_r = 1.0;

    /// Throws std::invalid_argument on violated invariants and re-validates
    /// the model parameters.
    void validate() const;
};

/// One scalar Monte Carlo summary against its limiting target.
struct StatisticRecord {
    std::string name;
    double target = 0.0;      ///< limiting value
    double estimate = 0.0;    ///< Monte Carlo mean (or derived statistic)
    double std_error = 0.0;   ///< NaN when replicas < 2 (flagged undefined)
    std::int64_t replicas_used = 0;
    std::int64_t replicas_degenerate = 0;
};

/// One tail-probability threshold record.
struct ThresholdRecord {
    double x = 0.0;
    std::uint64_t count = 0;        ///< replicas with |normalized stat| >= x
    double p_hat = 0.0;
    double slope = 0.0;             ///< -log(p_hat)/a_n^2 (lower bound if censored)
    double rate_prediction = 0.0;   ///< rate function at x
    bool lower_bound_flag = false;  ///< count == 0: slope is a censored lower bound
};

/// Mean truncation diagnostics across replicas.
struct TruncationSummary {
    double r = 0.0;
    double mean_gap = 0.0;
    double max_gap = 0.0;
    double qv[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  ///< mean of <Z^{(r)}>_n/(n kappa)
    double target[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

struct ExperimentResult {
    ExperimentKind kind = ExperimentKind::Concentration;
    std::int64_t n = 0;
    double kappa = 0.0;
    double a_n = 0.0;
    std::int64_t replicas = 0;
    std::uint64_t master_seed = 0;
    std::vector<StatisticRecord> stats;
    std::vector<ThresholdRecord> tail;    ///< TailSlope only
    std::vector<TailGridPoint> grid;      ///< BercuTouati only
    TruncationSummary truncation;         ///< Truncation only
    double wall_seconds = 0.0;
};

/// Mean over replicas of the six normalized concentration functionals
/// against their limits.  Throws AllReplicasDegenerate if no replica yields
/// finite estimates.
[[nodiscard]] ExperimentResult run_concentration(const ExperimentConfig& cfg);

/// Sample covariance of the scale-normalized estimator deviations against
/// the limiting covariance (severely damped) or the common variance plus
/// correlation -> -1 (oscillating), and the DW variance = 4x rho-variance.
/// Requires replicas >= 100.
[[nodiscard]] ExperimentResult run_variance_match(const ExperimentConfig& cfg);

/// Empirical tail slopes -log p_hat / a_n^2 for |normalized statistic| >= x
/// against the governing rate function.
[[nodiscard]] ExperimentResult run_tail_slope(const ExperimentConfig& cfg);

/// Frequency of the self-normalized event {|M_n| > x, <M>_n + [M]_n <= y}
/// on the (bt_x_coeffs x bt_y_fracs) grid against the 2 exp(-x^2/2y) bound.
[[nodiscard]] ExperimentResult run_bercu_touati(const ExperimentConfig& cfg);

/// Mean truncation gap and truncated bracket matrix against the limiting
/// second-moment matrix.
[[nodiscard]] ExperimentResult run_truncation(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment.
[[nodiscard]] ExperimentResult run(const ExperimentConfig& cfg);

}  // namespace middev
