// Acceptance suite.  Each invocation runs exactly one numbered criterion
// (argv[1] in 1..10), prints one [PASS]/[FAIL] line followed by indented
// detail lines, and exits 0 on pass, 1 on fail.  Every tolerance, band,
// sample size, replica count and seed is pinned here in code.
//
//  1  identity suite: every decomposition on 16 config cells x 1000 random
//     trajectories, relative residual <= 1e-9, under 60 s
//  2  hand-checkable path: bitwise estimates, first-stage identity <= 1e-15
//  3  rate-model algebra: Upsilon Theta Upsilon^T = Gamma (1e-10, 100 random
//     regimes), the J normalization (1e-12), the factor-2 grid (1e-12)
//  4  concentration of the normalized functionals at n = 1e6 (5%)
//  5  CLT-scale variance/covariance matching bands at delta = 0.15
//  6  moderate-deviation tail slopes against the rate function
//  7  self-normalized exponential inequality frequencies vs the bound
//  8  truncation gap decay and truncated bracket matrix
//  9  sign-flip conjugacy to machine precision on random paths
// 10  bitwise determinism of result payloads across worker counts

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "middev/estimate.hpp"
#include "middev/harness.hpp"
#include "middev/io.hpp"
#include "middev/ledger.hpp"
#include "middev/noise.hpp"
#include "middev/params.hpp"
#include "middev/rates.hpp"
#include "middev/rng.hpp"
#include "middev/simulate.hpp"
#include "test_util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return std::string(buf);
}

struct Verdict {
    bool ok = true;
    std::string summary;
    std::vector<std::string> detail;
};

void check_band(Verdict& v, const std::string& label, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    v.ok = v.ok && ok;
    v.detail.push_back(
        strf("%s = %.4f, band [%g, %g] -> %s", label.c_str(), value, lo, hi, ok ? "ok" : "FAIL"));
}

const middev::StatisticRecord& stat(const middev::ExperimentResult& r, const std::string& name) {
    for (const auto& s : r.stats)
        if (s.name == name) return s;
    throw std::runtime_error("missing statistic record: " + name);
}

// ---- criterion 1: exhaustive identity suite -------------------------------

Verdict criterion1() {
    const auto t0 = Clock::now();
    constexpr double kTol = 1e-9;     // relative residual, rel = |l-r|/max(1,|l|,|r|)
    constexpr double kBudget = 60.0;  // seconds
    constexpr int kPerCell = 1000;
    const middev::Case cases[2] = {middev::Case::I, middev::Case::II};
    const middev::NoiseFamily fams[2] = {middev::NoiseFamily::Gaussian,
                                         middev::NoiseFamily::Uniform};
    const std::int64_t sizes[4] = {10, 100, 1000, 10000};

    middev::Xoshiro256pp gamma_rng(20260801);
    std::uint64_t counter = 0;
    double max_rel = 0.0;
    std::int64_t checked = 0;
    bool all = true;
    for (const middev::Case c : cases)
        for (const middev::NoiseFamily fam : fams)
            for (const std::int64_t n : sizes)
                for (int t = 0; t < kPerCell; ++t) {
                    const double g1 = -2.0 + 1.75 * gamma_rng.next_open01();
                    const double g2 = -2.0 + 1.75 * gamma_rng.next_open01();
                    const middev::ModelConfig cfg =
                        testutil::make_config(c, g1, g2, 0.4, n, fam);
                    const middev::Trajectory traj =
                        middev::generate(cfg, middev::derive_stream_seed(11001, counter++));
                    const middev::EstimateSet est = middev::full_estimate(traj);
                    const middev::StatLedger led = middev::build_ledger(traj, est);
                    const middev::IdentityReport ids =
                        middev::check_identities(traj, est, led, kTol, false);
                    const middev::InequalityReport ineq =
                        middev::check_inequalities(traj, led, false);
                    for (const auto& l : ids.lines) max_rel = std::max(max_rel, l.rel_residual);
                    all = all && ids.all_pass() && ineq.all_pass();
                    ++checked;
                }
    const double elapsed = seconds_since(t0);
    Verdict v;
    v.ok = all && max_rel <= kTol && elapsed <= kBudget;
    v.summary = strf(
        "identity suite: %lld trajectories across 16 config cells, "
        "max rel residual %.3e (tol %.0e), %.1f s (budget %.0f s)",
        static_cast<long long>(checked), max_rel, kTol, elapsed, kBudget);
    return v;
}

// ---- criterion 2: hand-checkable path -------------------------------------

Verdict criterion2() {
    constexpr double kAbsTol = 1e-15;  // first-stage identity, absolute residual
    const middev::ScheduleSample sched = testutil::hand_schedule(0.9, 0.9, 2);
    const middev::Trajectory traj = testutil::hand_trajectory(sched, {1.0, -1.0});
    const middev::EstimateSet est = middev::full_estimate(traj);
    const middev::StatLedger led = middev::build_ledger(traj, est);
    const middev::IdentityReport ids = middev::check_identities(traj, est, led, 1e-9, false);

    Verdict v;
    const bool bitwise =
        est.theta_hat == 0.8 && est.rho_hat == 0.0 && est.d_hat == 2.0;
    const bool sums = led.M == -1.0 && led.Q == 0.92;
    const bool shape = ids.lines.size() == 11 && ids.lines.front().name == "theta-stage";
    const double abs0 = shape ? ids.lines.front().abs_residual : 1.0;
    v.ok = bitwise && sums && shape && abs0 <= kAbsTol && ids.all_pass();
    v.summary = strf(
        "hand path: theta_hat/rho_hat/d_hat bitwise (0.8, 0, 2) %s, "
        "M/Q bitwise (-1, 0.92) %s, "
        "first-stage identity abs residual %.3e (tol %.0e), all 11 identities %s",
        bitwise ? "ok" : "FAIL", sums ? "ok" : "FAIL", abs0, kAbsTol,
        ids.all_pass() ? "pass" : "FAIL");
    return v;
}

// ---- criterion 3: rate-model algebra --------------------------------------

Verdict criterion3() {
    constexpr double kUTUTol = 1e-10;
    constexpr double kExactTol = 1e-12;
    middev::Xoshiro256pp rng(30303);
    double worst_utu = 0.0, worst_j = 0.0, worst_f2 = 0.0;
    for (int t = 0; t < 100; ++t) {
        const double g1 = -3.0 + 2.9 * rng.next_open01();
        const double g2 = -3.0 + 2.9 * rng.next_open01();
        const double sigma = 0.3 + 2.7 * rng.next_open01();
        const middev::RateModel m = middev::build_rate_model(g1, g2, sigma);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double p = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        p += m.Upsilon[i][a] * m.Theta[a][b] * m.Upsilon[j][b];
                const double rel =
                    std::fabs(p - m.Gamma[i][j]) / std::max(1.0, std::fabs(m.Gamma[i][j]));
                worst_utu = std::max(worst_utu, rel);
            }
        for (const double x : {0.3, 1.0, 2.7}) {
            const double lhs = middev::eval_rate(m, middev::RateName::J, x) * 2.0 *
                               m.UpsilonTilde[0] * m.UpsilonTilde[0] * m.ThetaTilde[0][0];
            worst_j = std::max(worst_j, std::fabs(lhs - x * x) / std::max(1.0, x * x));
        }
        for (const double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            const double rd = middev::eval_rate(m, middev::RateName::I_d, x);
            const double rr = middev::eval_rate(m, middev::RateName::I_rho, 0.5 * x);
            const double jd = middev::eval_rate(m, middev::RateName::J_d, x);
            const double jj = middev::eval_rate(m, middev::RateName::J, 0.5 * x);
            worst_f2 = std::max(worst_f2, std::fabs(rd - rr) / std::max(1.0, std::fabs(rr)));
            worst_f2 = std::max(worst_f2, std::fabs(jd - jj) / std::max(1.0, std::fabs(jj)));
        }
    }
    const middev::ConsistencyReport rep =
        middev::consistency_check(middev::build_rate_model(-1.0, -1.0, 1.0), false);

    Verdict v;
    v.ok = worst_utu <= kUTUTol && worst_j <= kExactTol && worst_f2 <= kExactTol &&
           rep.all_pass();
    v.summary = strf(
        "rate algebra on 100 random regimes: max |UTU^T - Gamma| rel %.3e (tol %.0e), "
        "J normalization %.3e, factor-2 grid %.3e (tol %.0e); canonical consistency "
        "report %s",
        worst_utu, kUTUTol, worst_j, worst_f2, kExactTol, rep.all_pass() ? "pass" : "FAIL");
    return v;
}

// ---- criterion 4: concentration of the normalized functionals -------------

Verdict criterion4() {
    const auto t0 = Clock::now();
    constexpr double kRelTol = 0.05;   // checked statistics, relative
    constexpr double kAbsTolP = 0.02;  // oscillating-case P, absolute (target 0)
    constexpr double kBudget = 600.0;  // seconds

    middev::ExperimentConfig ec;
    ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, 1000000);
    ec.replicas = 50;
    ec.master_seed = 4001;
    ec.experiment = middev::ExperimentKind::Concentration;
    const middev::ExperimentResult r1 = middev::run(ec);

    ec.model = testutil::make_config(middev::Case::II, -1.0, -1.0, 0.3, 1000000);
    ec.master_seed = 4002;
    const middev::ExperimentResult r2 = middev::run(ec);

    Verdict v;
    // Severely damped case: P/(n kappa^3) converges too slowly at this n to
    // gate on; every other functional must sit within 5% of its limit.
    double worst1 = 0.0;
    for (const int idx : {0, 2, 3, 4, 5}) {
        const auto& s = r1.stats[static_cast<std::size_t>(idx)];
        const double rel = std::fabs(s.estimate - s.target) / std::fabs(s.target);
        worst1 = std::max(worst1, rel);
        if (rel > kRelTol)
            v.detail.push_back(strf("case I %s: estimate %.5f target %.5f rel %.3f -> FAIL",
                                    s.name.c_str(), s.estimate, s.target, rel));
    }
    double worst2 = 0.0;
    for (const int idx : {0, 2, 3, 4, 5}) {
        const auto& s = r2.stats[static_cast<std::size_t>(idx)];
        const double rel = std::fabs(s.estimate - s.target) / std::fabs(s.target);
        worst2 = std::max(worst2, rel);
        if (rel > kRelTol)
            v.detail.push_back(strf("case II %s: estimate %.5f target %.5f rel %.3f -> FAIL",
                                    s.name.c_str(), s.estimate, s.target, rel));
    }
    const double p2 = std::fabs(r2.stats[1].estimate);  // target 0
    const double elapsed = seconds_since(t0);
    v.ok = worst1 <= kRelTol && worst2 <= kRelTol && p2 <= kAbsTolP && elapsed <= kBudget;
    v.summary = strf(
        "concentration n=1e6, 50 replicas/case: worst rel dev I %.4f, II %.4f "
        "(tol %.2f), |P/(n kappa)| II %.4f (tol %.2f), %.1f s (budget %.0f s)",
        worst1, worst2, kRelTol, p2, kAbsTolP, elapsed, kBudget);
    return v;
}

// ---- criterion 5: CLT-scale variance matching -----------------------------

Verdict criterion5() {
    middev::ExperimentConfig ec;
    ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.15, 200000);
    ec.replicas = 4000;
    ec.master_seed = 5001;
    ec.experiment = middev::ExperimentKind::VarianceMatch;
    const middev::ExperimentResult rI = middev::run(ec);

    ec.model = testutil::make_config(middev::Case::II, -1.0, -1.0, 0.15, 200000);
    ec.master_seed = 5002;
    const middev::ExperimentResult rII = middev::run(ec);

    Verdict v;
    // Severely damped: limiting covariance diag(1, 4), DW variance 16.
    check_band(v, "case I  var z_theta", stat(rI, "var_z_theta").estimate, 0.85, 1.15);
    check_band(v, "case I  var z_rho  ", stat(rI, "var_z_rho").estimate, 3.4, 4.6);
    check_band(v, "case I  |cov|      ", std::fabs(stat(rI, "cov_z").estimate), 0.0, 0.3);
    check_band(v, "case I  var z_d    ", stat(rI, "var_z_d").estimate, 13.6, 18.4);
    // Oscillating: common variance -8 g1 g2 / g^3 = 1, correlation -> -1.
    check_band(v, "case II var z_theta", stat(rII, "var_z_theta").estimate, 0.85, 1.15);
    check_band(v, "case II var z_rho  ", stat(rII, "var_z_rho").estimate, 0.85, 1.15);
    check_band(v, "case II corr       ", stat(rII, "corr_z").estimate, -1.0, -0.9);
    check_band(v, "case II var z_d    ", stat(rII, "var_z_d").estimate, 3.4, 4.6);
    v.summary = strf(
        "variance matching at delta=0.15, n=2e5, 4000 replicas/case: %s "
        "(kappa = %.2f is small; the frozen-coefficient variances differ from their "
        "limits by O(1/kappa) -- see band details)",
        v.ok ? "all bands hit" : "bands missed", rI.kappa);
    return v;
}

// ---- criterion 6: moderate-deviation tail slopes --------------------------

Verdict criterion6() {
    const auto t0 = Clock::now();
    constexpr double kBudget = 1200.0;  // seconds
    middev::ExperimentConfig ec;
    ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.1, 50000);
    ec.replicas = 100000;
    ec.master_seed = 6001;
    ec.experiment = middev::ExperimentKind::TailSlope;
    ec.thresholds = {0.5, 1.0};
    ec.statistic = "theta";
    const middev::ExperimentResult r = middev::run(ec);

    Verdict v;
    const auto& a = r.tail.at(0);
    const auto& b = r.tail.at(1);
    check_band(v, "slope at x=0.5", a.slope, 0.075, 0.175);
    check_band(v, "slope at x=1.0", b.slope, 0.30, 0.70);
    const bool mono = b.slope > a.slope;
    const bool uncensored = !a.lower_bound_flag && !b.lower_bound_flag;
    const double elapsed = seconds_since(t0);
    v.ok = v.ok && mono && uncensored && elapsed <= kBudget;
    v.summary = strf(
        "tail slopes (theta, delta=0.1, n=5e4, 1e5 replicas): %.4f at x=0.5 "
        "(%llu hits), %.4f at x=1.0 (%llu hits), monotone %s, %.1f s (budget %.0f s)",
        a.slope, static_cast<unsigned long long>(a.count), b.slope,
        static_cast<unsigned long long>(b.count), mono ? "yes" : "NO", elapsed, kBudget);
    return v;
}

// ---- criterion 7: exponential inequality frequencies ----------------------

Verdict criterion7() {
    middev::ExperimentConfig ec;
    ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, 1000);
    ec.replicas = 100000;
    ec.master_seed = 7001;
    ec.experiment = middev::ExperimentKind::BercuTouati;
    const middev::ExperimentResult r = middev::run(ec);

    Verdict v;
    double worst_margin = 1e300;
    for (const auto& pt : r.grid) {
        const double trials = static_cast<double>(pt.trials);
        const double se = std::sqrt(pt.frequency * (1.0 - pt.frequency) / trials);
        const double margin = pt.bound + 3.0 * se - pt.frequency;
        worst_margin = std::min(worst_margin, margin);
        if (margin < 0.0)
            v.detail.push_back(strf("grid (x=%.4f, y=%.4f): freq %.3e > bound %.3e + 3se",
                                    pt.x, pt.y, pt.frequency, pt.bound));
    }
    v.ok = r.grid.size() == 9 && worst_margin >= 0.0;
    v.summary = strf(
        "self-normalized exponential inequality, 3x3 grid, 1e5 replicas: every "
        "frequency <= bound + 3 binomial SE (worst margin %.3e)",
        worst_margin);
    return v;
}

// ---- criterion 8: truncation gap decay and bracket matrix -----------------

Verdict criterion8() {
    constexpr std::int64_t kReplicas = 400;
    constexpr double kQvTol = 0.10;  // relative, at the largest n
    const std::int64_t sizes[3] = {1000, 10000, 100000};
    const double qv_target[2][2] = {{0.25, 0.25}, {0.25, 0.5}};

    double p99[3] = {0.0, 0.0, 0.0};
    double qv_mean[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int t = 0; t < 3; ++t) {
        const middev::ModelConfig cfg =
            testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, sizes[t]);
        std::vector<double> gaps;
        gaps.reserve(kReplicas);
        for (std::int64_t i = 0; i < kReplicas; ++i) {
            const middev::Trajectory traj = middev::generate(
                cfg, middev::derive_stream_seed(8001, static_cast<std::uint64_t>(i)));
            const middev::TruncationDiagnostics d =
                middev::truncation_diagnostics(traj, 1.0, cfg.noise);
            gaps.push_back(d.gap);
            if (t == 2)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) qv_mean[a][b] += d.qv[a][b] / kReplicas;
        }
        std::sort(gaps.begin(), gaps.end());
        const auto idx = static_cast<std::size_t>(std::ceil(0.99 * kReplicas)) - 1;
        p99[t] = gaps[idx];
    }

    Verdict v;
    const bool decreasing = p99[0] > p99[1] && p99[1] > p99[2];
    v.ok = decreasing;
    double worst_qv = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double rel = std::fabs(qv_mean[a][b] - qv_target[a][b]) / qv_target[a][b];
            worst_qv = std::max(worst_qv, rel);
        }
    v.ok = v.ok && worst_qv <= kQvTol;
    v.detail.push_back(strf("p99 gap: n=1e3 %.3e, n=1e4 %.3e, n=1e5 %.3e -> %s", p99[0],
                            p99[1], p99[2], decreasing ? "strictly decreasing" : "NOT decreasing"));
    v.detail.push_back(strf("mean bracket at n=1e5: [[%.4f, %.4f], [%.4f, %.4f]] vs "
                            "[[0.25, 0.25], [0.25, 0.5]]",
                            qv_mean[0][0], qv_mean[0][1], qv_mean[1][0], qv_mean[1][1]));
    v.summary = strf(
        "truncation (r=1, 400 replicas): p99 gap decays with n %s, bracket matrix "
        "worst rel dev %.4f (tol %.2f)",
        decreasing ? "ok" : "FAIL", worst_qv, kQvTol);
    return v;
}

// ---- criterion 9: sign-flip conjugacy -------------------------------------

Verdict criterion9() {
    constexpr double kTol = 1e-12;
    middev::Xoshiro256pp rng(9090);
    const middev::NoiseFamily fams[3] = {middev::NoiseFamily::Gaussian,
                                         middev::NoiseFamily::Uniform,
                                         middev::NoiseFamily::ScaledTwoPointSymmetric};
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const middev::Case c = (t % 2 == 0) ? middev::Case::I : middev::Case::II;
        const middev::NoiseFamily fam = fams[t % 3];
        const std::int64_t n = 50 + (t * 7) % 400;
        const double g1 = -2.0 + 1.75 * rng.next_open01();
        const double g2 = -2.0 + 1.75 * rng.next_open01();
        const double sigma = 0.5 + 2.0 * rng.next_open01();
        const middev::ModelConfig cfg = testutil::make_config(c, g1, g2, 0.35, n, fam, sigma);
        const middev::Trajectory traj =
            middev::generate(cfg, middev::derive_stream_seed(9001, static_cast<std::uint64_t>(t)));
        const middev::SignFlipReport rep = middev::sign_flip(traj);
        worst = std::max(worst, rep.max_abs_mapping_error);
    }
    Verdict v;
    v.ok = worst <= kTol;
    v.summary = strf(
        "sign-flip conjugacy on 100 random paths (both cases, all three families): "
        "max abs mapping error %.3e (tol %.0e)",
        worst, kTol);
    return v;
}

// ---- criterion 10: bitwise determinism across worker counts ---------------

Verdict criterion10() {
    struct Setup {
        const char* label;
        middev::ExperimentConfig ec;
    };
    std::vector<Setup> setups;
    {
        middev::ExperimentConfig ec;
        ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, 400);
        ec.replicas = 16;
        ec.master_seed = 101;
        ec.experiment = middev::ExperimentKind::Concentration;
        setups.push_back({"concentration", ec});
    }
    {
        middev::ExperimentConfig ec;
        ec.model = testutil::make_config(middev::Case::II, -1.0, -1.0, 0.3, 400);
        ec.replicas = 120;
        ec.master_seed = 102;
        ec.experiment = middev::ExperimentKind::VarianceMatch;
        setups.push_back({"variance_match", ec});
    }
    {
        middev::ExperimentConfig ec;
        ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, 300);
        ec.replicas = 40;
        ec.master_seed = 103;
        ec.experiment = middev::ExperimentKind::TailSlope;
        ec.thresholds = {0.5, 1.0};
        ec.statistic = "theta";
        setups.push_back({"tail_slope", ec});
    }
    {
        middev::ExperimentConfig ec;
        ec.model = testutil::make_config(middev::Case::I, -1.0, -1.0, 0.3, 200);
        ec.replicas = 30;
        ec.master_seed = 104;
        ec.experiment = middev::ExperimentKind::BercuTouati;
        setups.push_back({"bercu_touati", ec});
    }
    {
        middev::ExperimentConfig ec;
        ec.model = testutil::make_config(middev::Case::II, -1.0, -1.0, 0.3, 300);
        ec.replicas = 20;
        ec.master_seed = 105;
        ec.experiment = middev::ExperimentKind::Truncation;
        setups.push_back({"truncation", ec});
    }

    Verdict v;
    for (Setup& s : setups) {
        s.ec.threads = 1;
        const middev::ExperimentResult r1 = middev::run(s.ec);
        s.ec.threads = 8;
        const middev::ExperimentResult r8 = middev::run(s.ec);
        const bool same_json =
            middev::result_to_json(s.ec, r1).dump() == middev::result_to_json(s.ec, r8).dump();
        const bool same_csv = middev::result_to_csv(r1) == middev::result_to_csv(r8);
        const bool same_svg = middev::render_plot_svg(r1) == middev::render_plot_svg(r8);
        if (!(same_json && same_csv && same_svg)) {
            v.ok = false;
            v.detail.push_back(strf("%s: json %s, csv %s, svg %s", s.label,
                                    same_json ? "ok" : "DIFF", same_csv ? "ok" : "DIFF",
                                    same_svg ? "ok" : "DIFF"));
        }
    }
    v.summary = strf(
        "determinism: all five experiment kinds produce byte-identical json/csv/svg "
        "payloads at 1 vs 8 worker threads%s",
        v.ok ? "" : " -- MISMATCH");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
        return 2;
    }
    const int c = std::atoi(argv[1]);
    if (c < 1 || c > 10) {
        std::fprintf(stderr, "criterion index out of range: %s\n", argv[1]);
        return 2;
    }
    Verdict v;
    try {
        switch (c) {
            case 1: v = criterion1(); break;
            case 2: v = criterion2(); break;
            case 3: v = criterion3(); break;
            case 4: v = criterion4(); break;
            case 5: v = criterion5(); break;
            case 6: v = criterion6(); break;
            case 7: v = criterion7(); break;
            case 8: v = criterion8(); break;
            case 9: v = criterion9(); break;
            default: v = criterion10(); break;
        }
    } catch (const std::exception& e) {
        v.ok = false;
        v.summary = std::string("unexpected exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s\n", v.ok ? "PASS" : "FAIL", c, v.summary.c_str());
    for (const std::string& d : v.detail) std::printf("  %s\n", d.c_str());
    return v.ok ? 0 : 1;
}
