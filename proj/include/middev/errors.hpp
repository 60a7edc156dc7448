#pragma once

#include <stdexcept>
#include <string>

namespace middev {

/// Thrown when a schedule leaves the stationary region at some sample size,
/// i.e. |theta_n| >= 1 or |rho_n| >= 1.
struct NonStationaryAtN : std::domain_error {
    explicit NonStationaryAtN(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by the estimators when a least-squares denominator is zero
/// (e.g. zero noise, or n = 1 where X_0 = 0 is the only regressor).
/// `stage` identifies which ratio failed: "theta", "rho" or "dw".
struct ZeroDenominator : std::domain_error {
    std::string stage;
    explicit ZeroDenominator(std::string stage_)
        : std::domain_error("zero denominator in stage '" + stage_ + "'"), stage(std::move(stage_)) {}
};

/// Thrown when caller-supplied noise does not match the configured length.
struct LengthMismatch : std::invalid_argument {
    explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a rate-function denominator E(V^2-sigma^2)^2 is zero
/// (two-point noise has deterministic V^2).
struct DegenerateSecondMoment : std::domain_error {
    explicit DegenerateSecondMoment(const std::string& what) : std::domain_error(what) {}
};

/// Same for E(V^4-EV^4)^2 = 0.
struct DegenerateFourthMoment : std::domain_error {
    explicit DegenerateFourthMoment(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by the rate-model builder when gamma1 >= 0 or gamma2 >= 0.
struct InvalidRegime : std::domain_error {
    explicit InvalidRegime(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by the identity checker when an exact algebraic identity has a
/// relative residual above tolerance; carries the identity name.
struct DivergentIdentity : std::runtime_error {
    std::string identity;
    double rel_residual;
    DivergentIdentity(std::string identity_, double rel)
        : std::runtime_error("identity '" + identity_ + "' diverged, rel residual " + std::to_string(rel)),
          identity(std::move(identity_)),
          rel_residual(rel) {}
};

/// Thrown when a deterministic pathwise inequality is violated; carries the margin.
struct InequalityViolated : std::runtime_error {
    double margin;
    InequalityViolated(const std::string& what, double margin_)
        : std::runtime_error(what), margin(margin_) {}
};

/// Thrown by the rate-model consistency suite; names the failing check.
struct ConsistencyFailure : std::runtime_error {
    std::string check;
    double residual;
    ConsistencyFailure(std::string check_, double residual_)
        : std::runtime_error("consistency check '" + check_ + "' failed, residual " + std::to_string(residual_)),
          check(std::move(check_)),
          residual(residual_) {}
};

/// Thrown when every Monte Carlo replica was excluded as degenerate.
struct AllReplicasDegenerate : std::runtime_error {
    explicit AllReplicasDegenerate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace middev
