#pragma once

// Single-pass streaming accumulators used by the Monte Carlo harness.
// They advance the exact model recursions (same update order as the path
// generator) without storing the trajectory, so replicas at large n cost
// O(1) memory.  Estimator and ledger quantities are recovered at the end
// through the closed-form single-pass algebra.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "middev/errors.hpp"
#include "middev/params.hpp"
#include "middev/sum.hpp"

namespace middev {

/// Lean accumulator for the first-stage estimator only: tracks
/// P_n = sum X_k X_{k-1} and S_{n-1} = sum_{k<n} X_k^2.
class ThetaStream {
public:
    explicit ThetaStream(const ScheduleSample& sched)
        : theta_(sched.theta_n), rho_(sched.rho_n) {}

    void step(double v) {
        const double e = rho_ * eps_ + v;
        const double x = theta_ * X_ + e;
        S_prev_.add(X_ * X_);
        P_.add(x * X_);
        eps_ = e;
        X_ = x;
    }

    [[nodiscard]] double S_prev() const { return S_prev_.value(); }
    [[nodiscard]] double P() const { return P_.value(); }

    /// P_n / S_{n-1}; throws ZeroDenominator if S_{n-1} <= 0.
    [[nodiscard]] double theta_hat() const {
        const double s = S_prev_.value();
        if (!(s > 0.0)) throw ZeroDenominator("theta");
        return P_.value() / s;
    }

private:
    double theta_, rho_;
    double eps_ = 0.0, X_ = 0.0;
    CompensatedSum S_prev_, P_;
};

/// Full accumulator: every sum needed by the estimators, the concentration
/// functionals, and the exponential-inequality bookkeeping.
class FullStream {
public:
    explicit FullStream(const ScheduleSample& sched)
        : theta_(sched.theta_n), rho_(sched.rho_n) {}

    void step(double v) {
        const double e = rho_ * eps_ + v;
        const double x = theta_ * X_ + e;
        const double v2 = v * v;
        M_.add(X_ * v);
        if (k_ >= 1) N_.add(Xp_ * v);  // X_{k-2} exists from k = 2 on
        U_.add(eps_ * v);
        bracket_M_.add(X_ * X_ * v2);
        L_.add(v2);
        Lambda_.add(v2 * v2);
        S_.add(x * x);
        P_.add(x * X_);
        Q_.add(x * e);
        T_.add(e * e);
        if (k_ >= 1) W_.add(x * Xp_);
        max_V2_ = std::max(max_V2_, v2);
        max_eps2_ = std::max(max_eps2_, e * e);
        max_X2_ = std::max(max_X2_, x * x);
        Xp_ = X_;
        eps_ = e;
        X_ = x;
        ++k_;
    }

    [[nodiscard]] std::int64_t steps() const { return k_; }
    [[nodiscard]] double last_X() const { return X_; }        ///< X_n
    [[nodiscard]] double prev_X() const { return Xp_; }       ///< X_{n-1}
    [[nodiscard]] double M() const { return M_.value(); }
    [[nodiscard]] double N() const { return N_.value(); }
    [[nodiscard]] double U() const { return U_.value(); }
    [[nodiscard]] double S() const { return S_.value(); }
    [[nodiscard]] double P() const { return P_.value(); }
    [[nodiscard]] double Q() const { return Q_.value(); }
    [[nodiscard]] double T() const { return T_.value(); }
    [[nodiscard]] double W() const { return W_.value(); }
    [[nodiscard]] double L() const { return L_.value(); }
    [[nodiscard]] double Lambda() const { return Lambda_.value(); }
    [[nodiscard]] double bracket_M() const { return bracket_M_.value(); }
    [[nodiscard]] double max_X2() const { return max_X2_; }
    [[nodiscard]] double max_eps2() const { return max_eps2_; }
    [[nodiscard]] double max_V2() const { return max_V2_; }

    [[nodiscard]] double S_prev() const { return S() - X_ * X_; }
    [[nodiscard]] double S_prev2() const { return S_prev() - Xp_ * Xp_; }
    [[nodiscard]] double P_prev() const { return P() - X_ * Xp_; }

    [[nodiscard]] double theta_hat() const {
        const double s = S_prev();
        if (!(s > 0.0)) throw ZeroDenominator("theta");
        return P() / s;
    }

    /// I_n = sum ehat_k ehat_{k-1} via the single-pass identity
    /// I_n = P - th W - th S_{n-1} + th^2 P_{n-1}.
    [[nodiscard]] double I_sum(double th) const {
        return P() - th * W() - th * S_prev() + th * th * P_prev();
    }
    /// J_n = S - 2 th P + th^2 S_{n-1}.
    [[nodiscard]] double J_sum(double th) const {
        return S() - 2.0 * th * P() + th * th * S_prev();
    }
    /// J_{n-1} = S_{n-1} - 2 th P_{n-1} + th^2 S_{n-2}.
    [[nodiscard]] double J_prev(double th) const {
        return S_prev() - 2.0 * th * P_prev() + th * th * S_prev2();
    }

    [[nodiscard]] double rho_hat(double th) const {
        const double jp = J_prev(th);
        if (!(jp > 0.0)) throw ZeroDenominator("rho");
        return I_sum(th) / jp;
    }

    [[nodiscard]] double d_hat(double th) const {
        const double j = J_sum(th);
        if (!(j > 0.0)) throw ZeroDenominator("dw");
        return (j + J_prev(th) - 2.0 * I_sum(th)) / j;
    }

private:
    double theta_, rho_;
    double eps_ = 0.0, X_ = 0.0, Xp_ = 0.0;
    std::int64_t k_ = 0;
    CompensatedSum M_, N_, U_, S_, P_, Q_, T_, W_, L_, Lambda_, bracket_M_;
    double max_X2_ = 0.0, max_eps2_ = 0.0, max_V2_ = 0.0;
};

/// Streaming truncation accumulator: advances the exact recursion together
/// with its truncated companion sums.  Truncation levels are fixed up front;
/// the truncated noise is V 1{|V| <= noise_level} (the symmetric families
/// used here have exactly centered truncations).
class TruncationStream {
public:
    TruncationStream(const ScheduleSample& sched, double noise_level, double x_level,
                     double eps_level)
        : theta_(sched.theta_n),
          rho_(sched.rho_n),
          vlev_(noise_level),
          xlev_(x_level),
          elev_(eps_level) {}

    void step(double v) {
        const double vt = (std::fabs(v) <= vlev_) ? v : 0.0;
        const double Xr = (std::fabs(X_) <= xlev_) ? X_ : 0.0;
        const double er = (std::fabs(eps_) <= elev_) ? eps_ : 0.0;
        M_.add(X_ * v);
        U_.add(eps_ * v);
        Mr_.add(Xr * vt);
        Ur_.add(er * vt);
        // truncated predictable sums over k = 1..n-1: add the pre-update
        // values starting from the second step
        if (k_ >= 1) {
            Sr_.add(Xr * Xr);
            Qr_.add(Xr * er);
            Tr_.add(er * er);
        }
        const double e = rho_ * eps_ + v;
        const double x = theta_ * X_ + e;
        eps_ = e;
        X_ = x;
        ++k_;
    }

    [[nodiscard]] double M() const { return M_.value(); }
    [[nodiscard]] double U() const { return U_.value(); }
    [[nodiscard]] double M_r() const { return Mr_.value(); }
    [[nodiscard]] double U_r() const { return Ur_.value(); }
    [[nodiscard]] double S_r() const { return Sr_.value(); }
    [[nodiscard]] double Q_r() const { return Qr_.value(); }
    [[nodiscard]] double T_r() const { return Tr_.value(); }

private:
    double theta_, rho_, vlev_, xlev_, elev_;
    double eps_ = 0.0, X_ = 0.0;
    std::int64_t k_ = 0;
    CompensatedSum M_, U_, Mr_, Ur_, Sr_, Qr_, Tr_;
};

}  // namespace middev
