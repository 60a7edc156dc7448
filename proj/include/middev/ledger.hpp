#pragma once

// Path ledger: every algebraic statistic of a realization needed by the
// decomposition identities, the martingale/quadratic-variation bookkeeping,
// the pathwise inequalities and the truncation diagnostics.

#include <cstdint>
#include <string>
#include <vector>

#include "middev/estimate.hpp"
#include "middev/noise.hpp"
#include "middev/simulate.hpp"

namespace middev {

/// Every path statistic for one realization, computed by direct summation
/// (compensated) in a single pass over the trajectory, plus the closed-form
/// remainder/edge quantities derived from them.
struct StatLedger {
    // --- raw sums over the path (indices follow the recursions above) ---
    double M = 0.0;        ///< sum_{k=1}^n X_{k-1} V_k
    double N = 0.0;        ///< sum_{k=2}^n X_{k-2} V_k
    double U = 0.0;        ///< sum_{k=1}^n eps_{k-1} V_k
    double S = 0.0;        ///< S_n       = sum_{k=1}^n X_k^2
    double S_prev = 0.0;   ///< S_{n-1}   = sum_{k=1}^{n-1} X_k^2
    double S_prev2 = 0.0;  ///< S_{n-2}   = sum_{k=1}^{n-2} X_k^2
    double P = 0.0;        ///< P_n       = sum_{k=1}^n X_k X_{k-1}
    double P_prev = 0.0;   ///< P_{n-1}   = sum_{k=1}^{n-1} X_k X_{k-1}
    double Q = 0.0;        ///< Q_n       = sum_{k=1}^n X_k eps_k
    double Q_prev = 0.0;   ///< Q_{n-1}
    double T = 0.0;        ///< T_n       = sum_{k=1}^n eps_k^2
    double T_prev = 0.0;   ///< T_{n-1}
    double W = 0.0;        ///< W_n       = sum_{k=2}^n X_k X_{k-2}
    double L = 0.0;        ///< L_n       = sum_{k=1}^n V_k^2
    double Lambda = 0.0;   ///< Lambda_n  = sum_{k=1}^n V_k^4

    // --- residual-autocovariance sums (on the fitted residuals) ---
    double I_sum = 0.0;    ///< I_n = sum_{k=1}^n ehat_k ehat_{k-1}
    double J_sum = 0.0;    ///< J_n = sum_{k=1}^n ehat_k^2
    double J_prev = 0.0;   ///< J_{n-1}

    // --- martingale quadratic (co)variations ---
    double qv_M = 0.0;      ///< <M>_n   = sigma^2 S_{n-1}
    double qv_N = 0.0;      ///< <N>_n   = sigma^2 S_{n-2}
    double qv_U = 0.0;      ///< <U>_n   = sigma^2 T_{n-1}
    double cv_MN = 0.0;     ///< <M,N>_n = sigma^2 P_{n-1}
    double cv_MU = 0.0;     ///< <M,U>_n = sigma^2 Q_{n-1}
    double bracket_M = 0.0; ///< [M]_n   = sum_{k=1}^n X_{k-1}^2 V_k^2

    // --- edge/remainder scalars of the exact decompositions ---
    double xi_P = 0.0;     ///< theta rho X_n X_{n-1} - (theta+rho) X_n^2
    double xi_Q = 0.0;
    double xi_I = 0.0;
    double xi_J = 0.0;
    double G = 0.0;        ///< 2 P_n - (thetahat + theta*) S_n
    double F = 0.0;        ///< S_n + W_n - (thetahat + theta*) P_n
    double H = 0.0;        ///< F - rho* G
    double R_n1 = 0.0;     ///< remainder of the S_n decomposition
    double R_n3 = 0.0;     ///< remainder of the W_n decomposition
    double R_n4 = 0.0;     ///< remainder of the H_n decomposition
    double Delta_1 = 0.0;  ///< deterministic-coefficient part of xi_I - rho* xi_J
    double Delta_2 = 0.0;  ///< estimator-coefficient part of xi_I - rho* xi_J
    double f_n = 0.0;      ///< ehat_n^2 / J_n
    double R_d = 0.0;      ///< 2 (rhohat - rho*) f_n + (2 rho* - 1) f_n

    // --- pathwise maxima (for the domination inequalities) ---
    double max_X2 = 0.0;    ///< max_{0<=k<=n} X_k^2
    double max_eps2 = 0.0;  ///< max_{0<=k<=n} eps_k^2
    double max_V2 = 0.0;    ///< max_{1<=k<=n} V_k^2

    // --- absolute-power sums (for the domination inequalities) ---
    double abs_X1 = 0.0;    ///< sum |X_k|,   k = 1..n
    double abs_V1 = 0.0;    ///< sum |V_k|
    double abs_X4 = 0.0;    ///< sum X_k^4
    double abs_V4 = 0.0;    ///< sum V_k^4

    double sigma = 1.0;     ///< noise s.d. used for the <.> fields
};

/// One verified algebraic identity: both sides, absolute and relative gap.
struct IdentityLine {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_residual = 0.0;
    double rel_residual = 0.0;  ///< abs / max(1, |lhs|, |rhs|)
    bool pass = false;
};

struct IdentityReport {
    std::vector<IdentityLine> lines;
    double tolerance = 1e-9;
    double max_rel_residual = 0.0;
    [[nodiscard]] bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

/// One pathwise inequality: lhs must not exceed bound.
struct InequalityLine {
    std::string name;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;  ///< bound - lhs (>= 0 on pass)
    bool pass = false;
};

struct InequalityReport {
    std::vector<InequalityLine> lines;
    [[nodiscard]] bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
};

/// Exponential-inequality frequency estimate at one (x, y) grid point:
/// P(|M_n| > x, <M>_n + [M]_n <= y) <= 2 exp(-x^2 / (2y)).
struct TailGridPoint {
    double x = 0.0;
    double y = 0.0;
    std::uint64_t hits = 0;    ///< replicas realizing the joint event
    std::uint64_t trials = 0;
    double frequency = 0.0;
    double bound = 0.0;        ///< 2 exp(-x^2/(2y))
    bool pass = false;         ///< frequency <= bound
};

/// Truncation bookkeeping for one realization at truncation parameter r.
struct TruncationDiagnostics {
    double r = 0.0;
    double noise_level = 0.0;    ///< sqrt(kappa_n): truncation level for V
    double x_level = 0.0;        ///< level applied to the X path
    double eps_level = 0.0;      ///< level applied to the eps path
    double sigma_trunc_sq = 0.0; ///< E[(V^{(n)}_1)^2] for the generating family
    double Z[2] = {0.0, 0.0};    ///< untruncated pair (normalized per regime)
    double Z_r[2] = {0.0, 0.0};  ///< truncated pair
    double gap = 0.0;            ///< |Z - Z_r|_2 / (a_n sqrt(n kappa))
    double qv[2][2] = {{0.0, 0.0}, {0.0, 0.0}}; ///< <Z^{(r)}>_n / (n kappa)
};

/// Build the full ledger for one realization in a single compensated pass.
/// Throws LengthMismatch if the residual vector does not match the path.
[[nodiscard]] StatLedger build_ledger(const Trajectory& traj, const EstimateSet& est);

/// Verify every exact decomposition on this realization.  Residual metric:
/// rel = |lhs-rhs| / max(1, |lhs|, |rhs|).  Throws DivergentIdentity for the
/// first identity whose relative residual exceeds `tolerance` when
/// `throw_on_failure` is set; always returns the full report otherwise.
IdentityReport check_identities(const Trajectory& traj, const EstimateSet& est,
                                const StatLedger& led, double tolerance = 1e-9,
                                bool throw_on_failure = true);

/// Verify the deterministic pathwise inequalities on this realization:
/// power-sum domination (a = 1, 2, 4) and the maxima chain.  Throws
/// InequalityViolated on failure when `throw_on_failure` is set.
InequalityReport check_inequalities(const Trajectory& traj, const StatLedger& led,
                                    bool throw_on_failure = true);

/// Tail bound 2 exp(-x^2/(2y)) for the self-normalized event above.
[[nodiscard]] double bercu_touati_bound(double x, double y);

/// Whether this realization is in the event {|M_n| > x, <M>_n + [M]_n <= y}.
[[nodiscard]] bool bercu_touati_event(const StatLedger& led, double x, double y);

/// Truncation diagnostics for one realization.  `spec` must describe the
/// family that generated `traj` (used for the truncated second moment).
[[nodiscard]] TruncationDiagnostics truncation_diagnostics(const Trajectory& traj,
                                                           double r,
                                                           const NoiseSpec& spec);

}  // namespace middev
