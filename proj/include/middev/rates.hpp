#pragma once

// Limiting matrices and rate functions of the moderate-deviation regime,
// plus their internal algebraic consistency checks.

#include <array>
#include <string>
#include <vector>

#include "middev/noise.hpp"
#include "middev/params.hpp"

namespace middev {

using Mat2 = std::array<std::array<double, 2>, 2>;

/// Closed-form limiting objects for one (gamma1, gamma2, sigma) regime.
/// All entries are filled at construction; the object is immutable in use.
struct RateModel {
    double gamma1 = -1.0;
    double gamma2 = -1.0;
    double sigma = 1.0;
    double g = -2.0;           ///< gamma1 + gamma2 (< 0)
    Mat2 Gamma{};              ///< diag(-g1 g2 g / 2, -2g)
    Mat2 Theta{};              ///< second-moment matrix, severely-damped pair
    Mat2 ThetaTilde{};         ///< second-moment matrix, oscillating pair
    Mat2 Upsilon{};            ///< linearization matrix, Upsilon Theta Upsilon^T = Gamma
    std::array<double, 2> UpsilonTilde{};  ///< (u, -u)
    NoiseSpec noise;           ///< moments for the noise-functional rates
};

enum class RateName { I_theta, I_rho, I_joint, J, I_d, J_d, I_L, I_Lambda };

[[nodiscard]] const char* rate_name(RateName name);
[[nodiscard]] RateName rate_from_name(const std::string& name);

/// Build the model from the displayed closed forms.
/// Throws InvalidRegime unless gamma1 < 0, gamma2 < 0, sigma > 0.
/// `noise` supplies the fourth-moment structure for I_L / I_Lambda and
/// defaults to Gaussian with the same sigma.
[[nodiscard]] RateModel build_rate_model(double gamma1, double gamma2, double sigma);
[[nodiscard]] RateModel build_rate_model(double gamma1, double gamma2, double sigma,
                                         const NoiseSpec& noise);

/// Evaluate a scalar rate function at x.  Throws std::invalid_argument for
/// RateName::I_joint (use eval_joint), DegenerateSecondMoment /
/// DegenerateFourthMoment when the noise has no fluctuation at that order.
[[nodiscard]] double eval_rate(const RateModel& model, RateName name, double x);

/// Joint rate x^T Gamma^{-1} x / 2 (Gamma is diagonal; inverted in closed form).
[[nodiscard]] double eval_joint(const RateModel& model, double x1, double x2);

/// Select the rate function governing a normalized estimator deviation.
/// Severely-damped regime: theta -> I_theta, rho -> I_rho, d -> I_d;
/// oscillating regime: theta and rho -> J, d -> J_d.
[[nodiscard]] RateName rate_for_statistic(Case regime, const std::string& statistic);

struct ConsistencyLine {
    std::string name;
    double residual = 0.0;   ///< relative residual of the algebraic check
    double tolerance = 0.0;
    bool pass = false;
};

/// One point of the time-invariant variance matching suite: the classical
/// fixed-(theta,rho) asymptotic variance, evaluated on the schedule at a
/// given kappa and rescaled per regime, against its limiting constant.
struct MatchingLine {
    std::string name;
    double kappa = 0.0;
    double value = 0.0;
    double target = 0.0;
    double rel_error = 0.0;
};

struct ConsistencyReport {
    std::vector<ConsistencyLine> checks;
    std::vector<MatchingLine> matching;
    [[nodiscard]] bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Classical fixed-parameter asymptotic variances of the two-stage estimators
/// (time-invariant stationary display), used by the matching suite.
[[nodiscard]] double stationary_theta_variance(double theta, double rho);
[[nodiscard]] double stationary_rho_variance(double theta, double rho);

/// Verify (i) Upsilon Theta Upsilon^T = Gamma entrywise, (ii)
/// J(x)(2 UpsilonTilde_1^2 ThetaTilde_11) = x^2, (iii) I_d(x) = I_rho(x/2)
/// and J_d(x) = J(x/2) on a grid, and (iv) the variance matching along
/// kappa in {1e2, 1e3, 1e4} with a decreasing-error trend assertion.
/// Throws ConsistencyFailure on the first failing check when
/// `throw_on_failure` is set.
ConsistencyReport consistency_check(const RateModel& model, bool throw_on_failure = true);

}  // namespace middev
