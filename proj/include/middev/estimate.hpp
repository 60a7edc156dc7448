#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "middev/simulate.hpp"

namespace middev {

/// Two-stage least-squares output for one trajectory.
///
/// Normalized deviations use the case-dependent scalings divided by a_n:
///   Case I : z_theta = sqrt(n kappa^3)(theta_hat - theta*)/a_n,
///            z_rho   = sqrt(n kappa)(rho_hat - rho*)/a_n,
///            z_d     = sqrt(n kappa)(d_hat - d*)/a_n;
///   Case II: all three use sqrt(n/kappa)(.)/a_n.
struct EstimateSet {
    double theta_hat = 0.0;
    double rho_hat = 0.0;
    double d_hat = 0.0;
    std::vector<double> residuals;  ///< eps_hat[0..n], eps_hat[0] = 0
    double theta_star = 0.0;
    double rho_star = 0.0;
    double d_star = 0.0;
    double z_theta = 0.0;
    double z_rho = 0.0;
    double z_d = 0.0;
};

/// First stage: theta_hat = sum_{k=1..n} X_k X_{k-1} / sum_{k=1..n} X_{k-1}^2.
/// Throws ZeroDenominator("theta") when every regressor X_{k-1} is zero.
[[nodiscard]] double estimate_theta(const Trajectory& traj);

/// Residual chain eps_hat_0 = 0, eps_hat_k = X_k - theta_hat X_{k-1}.
[[nodiscard]] std::vector<double> residuals(const Trajectory& traj, double theta_hat);

/// Second stage: rho_hat = sum_{k=1..n} eh_k eh_{k-1} / sum_{k=1..n} eh_{k-1}^2
/// (denominator lags by one).  Throws ZeroDenominator("rho").
[[nodiscard]] double estimate_rho(const std::vector<double>& eps_hat);

/// Durbin-Watson statistic
///   d_hat = sum_{k=1..n} (eh_k - eh_{k-1})^2 / sum_{k=1..n} eh_k^2
/// (denominator is NOT lagged -- a deliberate asymmetry with rho_hat).
/// Result lies in [0,4].  Throws ZeroDenominator("dw").
[[nodiscard]] double durbin_watson(const std::vector<double>& eps_hat);

/// Runs both stages plus the DW statistic and assembles centered/normalized
/// values from the trajectory's schedule.  Throws ZeroDenominator identifying
/// the failing stage.
[[nodiscard]] EstimateSet full_estimate(const Trajectory& traj);

/// Alternating sign-flip transformation Y_k = (-1)^k X_k.
///
/// The flipped series follows the same model with coefficients
/// (alpha, beta) = (-theta, -rho) and noise W_k = (-1)^k V_k (equal in law to
/// V_k for symmetric noise).  Exact mappings, valid pathwise:
///   alpha_hat = -theta_hat,  beta_hat = -rho_hat,  alpha* = -theta*,
///   beta* = -rho*, and for the serial-correlation statistic of the flipped
///   chain -- whose natural difference operator is the alternating sum
///   eta_hat_k + eta_hat_{k-1} = (-1)^k (eps_hat_k - eps_hat_{k-1}) --
///   e_hat = sum (eta_hat_k + eta_hat_{k-1})^2 / sum eta_hat_k^2 = d_hat and
///   e* = 2 (1 + beta*) = d*.
struct SignFlipReport {
    Trajectory flipped;               ///< Y path with its own (-theta,-rho) schedule
    EstimateSet original;             ///< estimates on X
    double alpha_hat = 0.0;           ///< first-stage estimate on Y
    double beta_hat = 0.0;            ///< second-stage estimate on Y
    double e_hat = 0.0;               ///< alternating-difference DW on Y
    double alpha_star = 0.0;
    double beta_star = 0.0;
    double e_star = 0.0;
    double max_abs_mapping_error = 0.0;  ///< max over the six exact mappings
};

/// Performs the flip, re-runs both estimation stages on Y from scratch, and
/// reports the mapping errors.  Throws ZeroDenominator like full_estimate.
[[nodiscard]] SignFlipReport sign_flip(const Trajectory& traj);

/// CSV row: seed,n,case,theta_hat,rho_hat,d_hat,theta_star,rho_star,d_star,
/// z_theta,z_rho,z_d.  `seed` is echoed by the caller.
void write_estimate_csv_header(std::ostream& out);
void write_estimate_csv_row(std::ostream& out, std::uint64_t seed, std::int64_t n,
                            Case regime, const EstimateSet& est);

}  // namespace middev
