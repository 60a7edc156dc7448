#include "middev/ledger.hpp"

#include <cmath>

#include "middev/errors.hpp"
#include "middev/sum.hpp"

namespace middev {

StatLedger build_ledger(const Trajectory& traj, const EstimateSet& est) {
    const std::size_t n = static_cast<std::size_t>(traj.n());
    if (est.residuals.size() != n + 1)
        throw LengthMismatch("build_ledger: residuals do not match the path");
    StatLedger led;
    led.sigma = traj.sigma;

    CompensatedSum M, N, U, S, S_prev, S_prev2, P, P_prev, Q, Q_prev, T, T_prev, W, L, Lambda;
    CompensatedSum I_sum, J_sum, J_prev, bracket_M, abs_X1, abs_V1, abs_X4;
    for (std::size_t k = 1; k <= n; ++k) {
        const double xk = traj.X[k];
        const double xkm1 = traj.X[k - 1];
        const double ek = traj.eps[k];
        const double vk = traj.V[k - 1];
        const double ehk = est.residuals[k];
        const double ehkm1 = est.residuals[k - 1];
        M.add(xkm1 * vk);
        if (k >= 2) {
            N.add(traj.X[k - 2] * vk);
            W.add(xk * traj.X[k - 2]);
        }
        U.add(traj.eps[k - 1] * vk);
        S.add(xk * xk);
        P.add(xk * xkm1);
        Q.add(xk * ek);
        T.add(ek * ek);
        L.add(vk * vk);
        Lambda.add(vk * vk * vk * vk);
        if (k <= n - 1) {
            S_prev.add(xk * xk);
            P_prev.add(xk * xkm1);
            Q_prev.add(xk * ek);
            T_prev.add(ek * ek);
            J_prev.add(ehk * ehk);
        }
        if (k <= n - 2) S_prev2.add(xk * xk);
        I_sum.add(ehk * ehkm1);
        J_sum.add(ehk * ehk);
        bracket_M.add(xkm1 * xkm1 * vk * vk);
        abs_X1.add(std::fabs(xk));
        abs_V1.add(std::fabs(vk));
        abs_X4.add(xk * xk * xk * xk);
        led.max_X2 = std::max(led.max_X2, xk * xk);
        led.max_eps2 = std::max(led.max_eps2, ek * ek);
        led.max_V2 = std::max(led.max_V2, vk * vk);
    }
    led.M = M.value();
    led.N = N.value();
    led.U = U.value();
    led.S = S.value();
    led.S_prev = S_prev.value();
    led.S_prev2 = S_prev2.value();
    led.P = P.value();
    led.P_prev = P_prev.value();
    led.Q = Q.value();
    led.Q_prev = Q_prev.value();
    led.T = T.value();
    led.T_prev = T_prev.value();
    led.W = W.value();
    led.L = L.value();
    led.Lambda = Lambda.value();
    led.I_sum = I_sum.value();
    led.J_sum = J_sum.value();
    led.J_prev = J_prev.value();
    led.bracket_M = bracket_M.value();
    led.abs_X1 = abs_X1.value();
    led.abs_V1 = abs_V1.value();
    led.abs_X4 = abs_X4.value();
    led.abs_V4 = led.Lambda;

    const double s2 = led.sigma * led.sigma;
    led.qv_M = s2 * led.S_prev;
    led.qv_N = s2 * led.S_prev2;
    led.qv_U = s2 * led.T_prev;
    led.cv_MN = s2 * led.P_prev;
    led.cv_MU = s2 * led.Q_prev;

    // Closed-form remainder/edge scalars.
    const ScheduleSample& sc = traj.schedule;
    const double th = sc.theta_n;
    const double rh = sc.rho_n;
    const double tr = th * rh;
    const double sum_tr = th + rh;
    const double ts = sc.theta_star;
    const double rs = sc.rho_star;
    const double thh = est.theta_hat;
    const double xn = traj.X[n];
    const double xn1 = traj.X[n - 1];

    led.xi_P = tr * xn * xn1 - sum_tr * xn * xn;
    led.xi_Q = ts * led.xi_P - sum_tr * xn * xn1 + tr * (xn * xn + xn1 * xn1);
    led.xi_I = thh * xn * xn - thh * thh * xn * xn1 +
               (1.0 + ts * ts) / (1.0 + tr) * led.xi_P - ts * led.xi_Q;
    led.xi_J = -xn * xn + 2.0 * thh * xn * xn1 - thh * thh * (xn * xn + xn1 * xn1) -
               2.0 * ts / (1.0 + tr) * led.xi_P;
    led.G = 2.0 * led.P - (thh + ts) * led.S;
    led.F = led.S + led.W - (thh + ts) * led.P;
    led.H = led.F - rs * led.G;
    led.R_n1 = (2.0 * tr * sum_tr * ts - sum_tr * sum_tr - tr * tr) * xn * xn +
               (2.0 * sum_tr - 2.0 * tr * ts) * led.M - 2.0 * tr * led.N +
               (2.0 * tr * sum_tr - 2.0 * tr * tr * ts) * xn * xn1 - tr * tr * xn1 * xn1;
    led.R_n3 = led.N + sum_tr * led.M / (1.0 + tr) - sum_tr / (1.0 + tr) * xn * xn1 +
               tr * (xn * xn + xn1 * xn1) - sum_tr * ts * xn * xn;
    led.R_n4 = led.R_n3 - 2.0 * (ts + rs) * (led.M / (1.0 + tr) +
                                             tr * xn * xn1 / (1.0 + tr) - ts * xn * xn);
    led.Delta_1 =
        tr * (1.0 - th * th) * (1.0 - rh * rh) / std::pow(1.0 + tr, 3.0) * xn * xn1 +
        rs * (ts + 1.0) * (ts - 1.0) * xn1 * xn1;
    led.Delta_2 = (ts * ts - thh * thh + 2.0 * rs * (ts - thh)) * xn * xn1 +
                  (rs * (thh * thh - ts * ts) + (thh - ts)) * xn * xn +
                  rs * (thh * thh - ts * ts) * xn1 * xn1;
    led.f_n = (led.J_sum > 0.0)
                  ? est.residuals[n] * est.residuals[n] / led.J_sum
                  : 0.0;
    led.R_d = 2.0 * (est.rho_hat - rs) * led.f_n + (2.0 * rs - 1.0) * led.f_n;
    return led;
}

namespace {

IdentityLine make_line(const std::string& name, double lhs, double rhs, double tol) {
    IdentityLine line;
    line.name = name;
    line.lhs = lhs;
    line.rhs = rhs;
    line.abs_residual = std::fabs(lhs - rhs);
    const double scale = std::max(1.0, std::max(std::fabs(lhs), std::fabs(rhs)));
    line.rel_residual = line.abs_residual / scale;
    line.pass = line.rel_residual <= tol;
    return line;
}

}  // namespace

IdentityReport check_identities(const Trajectory& traj, const EstimateSet& est,
                                const StatLedger& led, double tolerance,
                                bool throw_on_failure) {
    const ScheduleSample& sc = traj.schedule;
    const double th = sc.theta_n;
    const double rh = sc.rho_n;
    const double tr = th * rh;
    const double sum_tr = th + rh;
    const double ts = sc.theta_star;
    const double rs = sc.rho_star;
    const double thh = est.theta_hat;
    const std::size_t n = static_cast<std::size_t>(traj.n());
    const double xn = traj.X[n];
    const double xn1 = traj.X[n - 1];

    IdentityReport report;
    report.tolerance = tolerance;
    auto push = [&](const std::string& name, double lhs, double rhs) {
        report.lines.push_back(make_line(name, lhs, rhs, tolerance));
        report.max_rel_residual = std::max(report.max_rel_residual,
                                           report.lines.back().rel_residual);
    };

    // First-stage normal-equation decomposition.  Both sides are kept at the
    // scale of the accumulated sums: the deviation form (theta_hat - theta*)
    // would multiply the rounding of the stored quotient theta_hat by S_{n-1}
    // and can lose nine digits on large-excursion paths.
    push("theta-stage", thh * (1.0 + tr) * led.S_prev,
         ts * (1.0 + tr) * led.S_prev + led.M + tr * xn * xn1);

    // Cross-moment decomposition of P_n.
    push("P-decomp", led.P,
         ts * led.S_prev + led.M / (1.0 + tr) + tr * xn * xn1 / (1.0 + tr));

    // Energy decomposition of S_n.
    push("S-decomp",
         led.S * (1.0 - tr) * (1.0 - th * th) * (1.0 - rh * rh) / (1.0 + tr),
         led.L + led.R_n1);

    // Mixed-moment decomposition of Q_n.
    push("Q-decomp", led.Q,
         0.5 * ((1.0 - th * th) * led.S + th * th * xn * xn + led.T));

    // Second-lag decomposition of W_n.
    push("W-decomp", led.W, (sum_tr * ts - tr) * led.S + led.R_n3);

    // U_n as a linear combination of the other two martingales.
    push("U-mart", led.U, led.M - th * led.N);

    // Residual-energy decomposition of J_{n-1}.
    push("J-decomp", led.J_prev,
         (1.0 + ts) * (1.0 - ts) * led.S - 2.0 * ts / (1.0 + tr) * led.M -
             (thh - ts) * led.G + led.xi_J);

    // Second-stage decomposition.
    push("rho-stage", led.J_prev * (est.rho_hat - rs),
         ((1.0 + ts * rs) / (1.0 + tr) - ts / th) * led.M + ts / th * led.U -
             (thh - ts) * led.H + led.xi_I - rs * led.xi_J);

    // Decomposition of the H_n functional.
    push("H-decomp", led.H,
         (1.0 - tr) * (1.0 - th) * (1.0 - rh) * (1.0 + ts) / (1.0 + tr) * led.S +
             (thh - ts) * (rs * led.S - led.P) + led.R_n4);

    // Edge-term combination.
    push("xi-combine", led.xi_I - rs * led.xi_J, led.Delta_1 + led.Delta_2);

    // Durbin-Watson decomposition.
    push("d-decomp", est.d_hat - est.d_star,
         -2.0 * (est.rho_hat - rs) + led.R_d);

    if (throw_on_failure) {
        for (const auto& line : report.lines)
            if (!line.pass) throw DivergentIdentity(line.name, line.rel_residual);
    }
    return report;
}

namespace {

InequalityLine make_ineq(const std::string& name, double lhs, double bound) {
    InequalityLine line;
    line.name = name;
    line.lhs = lhs;
    line.bound = bound;
    line.margin = bound - lhs;
    // Exact real inequalities; allow only rounding headroom.
    line.pass = lhs <= bound * (1.0 + 1e-12) + 1e-300;
    return line;
}

}  // namespace

InequalityReport check_inequalities(const Trajectory& traj, const StatLedger& led,
                                    bool throw_on_failure) {
    const ScheduleSample& sc = traj.schedule;
    const double inv_th = 1.0 / (1.0 - std::fabs(sc.theta_n));
    const double inv_rh = 1.0 / (1.0 - std::fabs(sc.rho_n));
    const double c1 = inv_th * inv_rh;

    InequalityReport report;
    report.lines.push_back(make_ineq("power-sum-a1", led.abs_X1, c1 * led.abs_V1));
    report.lines.push_back(make_ineq("power-sum-a2", led.S, c1 * c1 * led.L));
    report.lines.push_back(
        make_ineq("power-sum-a4", led.abs_X4, c1 * c1 * c1 * c1 * led.abs_V4));
    // 1/(1-|theta_n|) = kappa/|gamma1| and 1/(1-|rho_n|) = kappa/|gamma2|
    // for both regimes, so the maxima chain uses the same constants.
    report.lines.push_back(
        make_ineq("max-X-eps", led.max_X2, inv_th * inv_th * led.max_eps2));
    report.lines.push_back(
        make_ineq("max-eps-V", led.max_eps2, inv_rh * inv_rh * led.max_V2));

    if (throw_on_failure) {
        for (const auto& line : report.lines)
            if (!line.pass) throw InequalityViolated(line.name, line.margin);
    }
    return report;
}

double bercu_touati_bound(double x, double y) {
    if (!(y > 0.0)) return 0.0;
    return 2.0 * std::exp(-x * x / (2.0 * y));
}

bool bercu_touati_event(const StatLedger& led, double x, double y) {
    return std::fabs(led.M) > x && (led.qv_M + led.bracket_M) <= y;
}

TruncationDiagnostics truncation_diagnostics(const Trajectory& traj, double r,
                                             const NoiseSpec& spec) {
    const ScheduleSample& sc = traj.schedule;
    const std::size_t n = static_cast<std::size_t>(traj.n());
    const double nk = static_cast<double>(n) * sc.kappa;
    const bool oscillating = sc.rho_n < 0.0;

    TruncationDiagnostics diag;
    diag.r = r;
    diag.noise_level = std::sqrt(sc.kappa);
    diag.x_level = r * std::sqrt(static_cast<double>(n)) * sc.kappa / sc.a_n;
    diag.eps_level = r * std::sqrt(static_cast<double>(n)) / sc.a_n;
    diag.sigma_trunc_sq = truncated_second_moment(spec, diag.noise_level);

    CompensatedSum M, U, Mr, Ur, Sr, Qr, Tr;
    for (std::size_t k = 1; k <= n; ++k) {
        const double v = traj.V[k - 1];
        const double x = traj.X[k - 1];
        const double e = traj.eps[k - 1];
        const double vt = (std::fabs(v) <= diag.noise_level) ? v : 0.0;
        const double xr = (std::fabs(x) <= diag.x_level) ? x : 0.0;
        const double er = (std::fabs(e) <= diag.eps_level) ? e : 0.0;
        M.add(x * v);
        U.add(e * v);
        Mr.add(xr * vt);
        Ur.add(er * vt);
        if (k >= 2) {  // predictable sums over indices 1..n-1
            Sr.add(xr * xr);
            Qr.add(xr * er);
            Tr.add(er * er);
        }
    }

    const double inv_k = 1.0 / sc.kappa;
    if (!oscillating) {
        diag.Z[0] = M.value() * inv_k;
        diag.Z[1] = U.value();
        diag.Z_r[0] = Mr.value() * inv_k;
        diag.Z_r[1] = Ur.value();
        diag.qv[0][0] = diag.sigma_trunc_sq * Sr.value() * inv_k * inv_k / nk;
        diag.qv[0][1] = diag.sigma_trunc_sq * Qr.value() * inv_k / nk;
        diag.qv[1][1] = diag.sigma_trunc_sq * Tr.value() / nk;
    } else {
        diag.Z[0] = M.value();
        diag.Z[1] = U.value();
        diag.Z_r[0] = Mr.value();
        diag.Z_r[1] = Ur.value();
        diag.qv[0][0] = diag.sigma_trunc_sq * Sr.value() / nk;
        diag.qv[0][1] = diag.sigma_trunc_sq * Qr.value() / nk;
        diag.qv[1][1] = diag.sigma_trunc_sq * Tr.value() / nk;
    }
    diag.qv[1][0] = diag.qv[0][1];
    const double d0 = diag.Z[0] - diag.Z_r[0];
    const double d1 = diag.Z[1] - diag.Z_r[1];
    diag.gap = std::sqrt(d0 * d0 + d1 * d1) / (sc.a_n * std::sqrt(nk));
    return diag;
}

}  // namespace middev
