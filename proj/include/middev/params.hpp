#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "middev/noise.hpp"

#include "json.hpp"

namespace middev {

/// Regime of the coefficient schedules.
///   CaseI :  theta_n = 1 + gamma1/kappa_n,  rho_n =  1 + gamma2/kappa_n
///   CaseII:  theta_n = 1 + gamma1/kappa_n,  rho_n = -1 - gamma2/kappa_n
/// with gamma1 < 0, gamma2 < 0 and kappa_n = n^delta, so both coefficients
/// approach the unit circle from inside the stationary region.
enum class Case { I, II };

enum class ScaleKind {
    PowerLaw,  ///< a_n = n^beta, beta > 0
    SqrtLog,   ///< a_n = sqrt(log n)
};

/// Deviation scale a_n sitting between the CLT (a_n ~ 1) and LLN (a_n ~ sqrt(n)).
struct DeviationScale {
    ScaleKind kind = ScaleKind::SqrtLog;
    double beta = 0.0;  ///< only meaningful for PowerLaw
};

/// Full model configuration; the unit every experiment is parameterized by.
struct ModelConfig {
    Case regime = Case::I;
    double gamma1 = -1.0;  ///< < 0
    double gamma2 = -1.0;  ///< < 0
    double delta = 0.3;    ///< kappa_n = n^delta, delta in (0,1)
    DeviationScale scale;
    double sigma = 1.0;    ///< noise standard deviation, > 0
    std::int64_t n = 100;  ///< sample size, >= 2
    NoiseSpec noise;

    /// Throws std::invalid_argument on any out-of-range field.
    void validate() const;
};

/// All schedule values at a given sample size, plus the centering constants
///   theta* = (theta_n + rho_n)/(1 + theta_n rho_n),
///   rho*   = theta_n rho_n theta*,
///   d*     = 2 (1 - rho*).
struct ScheduleSample {
    std::int64_t n = 0;
    double kappa = 0.0;
    double theta_n = 0.0;
    double rho_n = 0.0;
    double a_n = 0.0;
    double theta_star = 0.0;
    double rho_star = 0.0;
    double d_star = 0.0;
};

/// Deviation scale value at sample size n.
[[nodiscard]] double eval_scale(const DeviationScale& scale, double n);

/// Pure function of (config, n).  Throws NonStationaryAtN if the schedule
/// leaves (-1,1) at this n (Case I needs n^delta > max(|gamma1|,|gamma2|)).
[[nodiscard]] ScheduleSample sample_schedule(const ModelConfig& config, std::int64_t n);

/// Convenience overload at the configured n.
[[nodiscard]] ScheduleSample sample_schedule(const ModelConfig& config);

struct RatioPoint {
    std::int64_t n = 0;
    double value = 0.0;
};

/// One growth condition: its defining ratio (which must diverge), the
/// analytic verdict from exponent arithmetic, and numeric values on a grid.
struct ConditionCheck {
    std::string name;
    bool analytic_pass = false;
    std::vector<RatioPoint> ratios;
};

struct ConditionReport {
    std::vector<ConditionCheck> conditions;
    bool chen_ledoux_pass = false;  ///< analytic flag of the noise family
    [[nodiscard]] bool all_pass() const;
};

/// Checks the growth conditions linking a_n, kappa_n and n.
///
/// With a_n = n^beta and kappa_n = n^delta the three required divergences
/// reduce to sign checks on the exponents:
///   Case I : n/(a^6 k^2), n/(a^2 k^5), n a^2/(k^5 log^2 n)
///            -> 1-6b-2d, 1-2b-5d, 1+2b-5d all > 0;
///   Case II: n/(a^6 k^6), n/(a^2 k^11), n a^2/(k^7 log^2 n)
///            -> 1-6b-6d, 1-2b-11d, 1+2b-7d all > 0.
/// For SqrtLog scales a_n is subpolynomial, so the analytic verdict uses the
/// same exponents with beta = 0; the ratios are also evaluated numerically at
/// every grid point.  The Chen-Ledoux tail condition on V^4 is an analytic
/// per-family flag (Gaussian tails and bounded support both satisfy it).
[[nodiscard]] ConditionReport validate_conditions(const ModelConfig& config,
                                                  const std::vector<std::int64_t>& n_grid);

[[nodiscard]] std::string case_name(Case c);
[[nodiscard]] Case case_from_name(const std::string& name);

/// JSON round trip.  Keys: case, gamma1, gamma2, delta,
/// scale:{kind,beta}, sigma, n, noise:{family,sigma}.
[[nodiscard]] ModelConfig config_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json config_to_json(const ModelConfig& config);
[[nodiscard]] nlohmann::json condition_report_to_json(const ConditionReport& report);

}  // namespace middev
