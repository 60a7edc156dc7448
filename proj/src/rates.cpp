#include "middev/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "middev/errors.hpp"

namespace middev {

const char* rate_name(RateName name) {
    switch (name) {
        case RateName::I_theta: return "I_theta";
        case RateName::I_rho: return "I_rho";
        case RateName::I_joint: return "I_joint";
        case RateName::J: return "J";
        case RateName::I_d: return "I_d";
        case RateName::J_d: return "J_d";
        case RateName::I_L: return "I_L";
        case RateName::I_Lambda: return "I_Lambda";
    }
    return "I_theta";
}

RateName rate_from_name(const std::string& name) {
    if (name == "I_theta") return RateName::I_theta;
    if (name == "I_rho") return RateName::I_rho;
    if (name == "I_joint") return RateName::I_joint;
    if (name == "J") return RateName::J;
    if (name == "I_d") return RateName::I_d;
    if (name == "J_d") return RateName::J_d;
    if (name == "I_L") return RateName::I_L;
    if (name == "I_Lambda") return RateName::I_Lambda;
    throw std::invalid_argument("unknown rate function: " + name);
}

RateModel build_rate_model(double gamma1, double gamma2, double sigma) {
    // Validate the regime before constructing the default noise so the
    // documented InvalidRegime fires for a bad sigma, not the noise guard.
    if (!(gamma1 < 0.0) || !(gamma2 < 0.0))
        throw InvalidRegime("rate model requires gamma1 < 0 and gamma2 < 0");
    if (!(sigma > 0.0)) throw InvalidRegime("rate model requires sigma > 0");
    return build_rate_model(gamma1, gamma2, sigma, make_noise(NoiseFamily::Gaussian, sigma));
}

RateModel build_rate_model(double gamma1, double gamma2, double sigma,
                           const NoiseSpec& noise) {
    if (!(gamma1 < 0.0) || !(gamma2 < 0.0))
        throw InvalidRegime("rate model requires gamma1 < 0 and gamma2 < 0");
    if (!(sigma > 0.0)) throw InvalidRegime("rate model requires sigma > 0");
    RateModel m;
    m.gamma1 = gamma1;
    m.gamma2 = gamma2;
    m.sigma = sigma;
    m.g = gamma1 + gamma2;
    m.noise = noise;
    const double g = m.g;
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;

    m.Gamma = {{{-gamma1 * gamma2 * g / 2.0, 0.0}, {0.0, -2.0 * g}}};
    m.Theta = {{{-s4 / (2.0 * gamma1 * gamma2 * g), s4 / (2.0 * gamma2 * g)},
                {s4 / (2.0 * gamma2 * g), -s4 / (2.0 * gamma2)}}};
    m.ThetaTilde = {{{-g * s4 / (8.0 * gamma1 * gamma2), -s4 / (4.0 * gamma2)},
                     {-s4 / (4.0 * gamma2), -s4 / (2.0 * gamma2)}}};
    m.Upsilon = {{{-gamma1 * gamma2 * g / s2, 0.0},
                  {-2.0 * gamma1 * g / s2, -2.0 * g / s2}}};
    const double ut = 8.0 * gamma1 * gamma2 / (g * g * s2);
    m.UpsilonTilde = {ut, -ut};
    return m;
}

double eval_rate(const RateModel& m, RateName name, double x) {
    const double g = m.g;
    switch (name) {
        case RateName::I_theta:
            return -x * x / (m.gamma1 * m.gamma2 * g);
        case RateName::I_rho:
            return -x * x / (4.0 * g);
        case RateName::I_joint:
            throw std::invalid_argument("I_joint takes a 2-vector; use eval_joint");
        case RateName::J:
            return -g * g * g * x * x / (16.0 * m.gamma1 * m.gamma2);
        case RateName::I_d:
            return -x * x / (16.0 * g);
        case RateName::J_d:
            return -g * g * g * x * x / (64.0 * m.gamma1 * m.gamma2);
        case RateName::I_L:
            return rate_L(m.noise, x);
        case RateName::I_Lambda:
            return rate_Lambda(m.noise, x);
    }
    throw std::logic_error("unhandled rate name");
}

double eval_joint(const RateModel& m, double x1, double x2) {
    // Gamma is diagonal: invert in closed form.
    return 0.5 * (x1 * x1 / m.Gamma[0][0] + x2 * x2 / m.Gamma[1][1]);
}

RateName rate_for_statistic(Case regime, const std::string& statistic) {
    if (statistic == "L") return RateName::I_L;
    if (statistic == "Lambda") return RateName::I_Lambda;
    if (regime == Case::I) {
        if (statistic == "theta") return RateName::I_theta;
        if (statistic == "rho") return RateName::I_rho;
        if (statistic == "d") return RateName::I_d;
    } else {
        if (statistic == "theta" || statistic == "rho") return RateName::J;
        if (statistic == "d") return RateName::J_d;
    }
    throw std::invalid_argument("unknown statistic: " + statistic);
}

double stationary_theta_variance(double theta, double rho) {
    const double tr = theta * rho;
    const double c = 1.0 + tr;
    return (1.0 - theta * theta) * (1.0 - tr) * (1.0 - rho * rho) / (c * c * c);
}

double stationary_rho_variance(double theta, double rho) {
    const double tr = theta * rho;
    const double c = 1.0 + tr;
    const double sum_tr = theta + rho;
    return (1.0 - tr) *
           (sum_tr * sum_tr * c * c +
            tr * tr * (1.0 - theta * theta) * (1.0 - rho * rho)) /
           (c * c * c);
}

namespace {

void push_check(ConsistencyReport& report, const std::string& name, double residual,
                double tolerance) {
    report.checks.push_back({name, residual, tolerance, residual <= tolerance});
}

double rel_gap(double value, double target) {
    return std::fabs(value - target) / std::max(1.0, std::fabs(target));
}

}  // namespace

ConsistencyReport consistency_check(const RateModel& m, bool throw_on_failure) {
    ConsistencyReport report;

    // (i) Upsilon Theta Upsilon^T = Gamma entrywise.
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            double v = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) v += m.Upsilon[i][a] * m.Theta[a][b] * m.Upsilon[j][b];
            worst = std::max(worst, rel_gap(v, m.Gamma[i][j]));
        }
    }
    push_check(report, "Upsilon*Theta*Upsilon^T = Gamma", worst, 1e-10);

    // (ii) J(x) (2 UpsilonTilde_1^2 ThetaTilde_11) = x^2.
    worst = 0.0;
    const double c = 2.0 * m.UpsilonTilde[0] * m.UpsilonTilde[0] * m.ThetaTilde[0][0];
    for (const double x : {0.25, 0.5, 1.0, 2.0, 3.5}) {
        const double lhs = eval_rate(m, RateName::J, x) * c;
        worst = std::max(worst, rel_gap(lhs, x * x));
    }
    push_check(report, "J(x)*2*UpsilonTilde1^2*ThetaTilde11 = x^2", worst, 1e-12);

    // (iii) Factor-2 relations of the serial-correlation statistic.
    worst = 0.0;
    for (const double x : {0.25, 0.5, 1.0, 2.0, 3.5}) {
        worst = std::max(worst, rel_gap(eval_rate(m, RateName::I_d, x),
                                        eval_rate(m, RateName::I_rho, x / 2.0)));
        worst = std::max(worst, rel_gap(eval_rate(m, RateName::J_d, x),
                                        eval_rate(m, RateName::J, x / 2.0)));
    }
    push_check(report, "I_d(x)=I_rho(x/2), J_d(x)=J(x/2)", worst, 1e-12);

    // (iv) Variance matching with the classical fixed-coefficient formulas
    // along kappa in {1e2, 1e3, 1e4}: errors must decrease and the final
    // point must sit within 0.5% of the limiting constant.
    struct MatchDef {
        const char* name;
        bool oscillating;
        int which;  // 0 = theta, 1 = rho
        double target;
    };
    const double g = m.g;
    const MatchDef defs[] = {
        {"caseI kappa^3 sigma_theta^2 -> Gamma11", false, 0, m.Gamma[0][0]},
        {"caseI kappa sigma_rho^2 -> Gamma22", false, 1, m.Gamma[1][1]},
        {"caseII sigma_theta^2/kappa -> -8g1g2/g^3", true, 0,
         -8.0 * m.gamma1 * m.gamma2 / (g * g * g)},
        {"caseII sigma_rho^2/kappa -> -8g1g2/g^3", true, 1,
         -8.0 * m.gamma1 * m.gamma2 / (g * g * g)},
    };
    const double kappas[] = {1e2, 1e3, 1e4};
    for (const auto& def : defs) {
        double prev_err = -1.0;
        bool trend_ok = true;
        double final_err = 0.0;
        for (const double kappa : kappas) {
            const double theta = 1.0 + m.gamma1 / kappa;
            const double rho = def.oscillating ? -1.0 - m.gamma2 / kappa : 1.0 + m.gamma2 / kappa;
            const double var = (def.which == 0) ? stationary_theta_variance(theta, rho)
                                                : stationary_rho_variance(theta, rho);
            double value = 0.0;
            if (def.oscillating) {
                value = var / kappa;
            } else {
                value = (def.which == 0) ? kappa * kappa * kappa * var : kappa * var;
            }
            const double err = rel_gap(value, def.target);
            MatchingLine line;
            line.name = def.name;
            line.kappa = kappa;
            line.value = value;
            line.target = def.target;
            line.rel_error = err;
            report.matching.push_back(line);
            if (prev_err >= 0.0 && err >= prev_err) trend_ok = false;
            prev_err = err;
            final_err = err;
        }
        push_check(report, std::string(def.name) + " [trend]", trend_ok ? 0.0 : 1.0, 0.5);
        push_check(report, std::string(def.name) + " [final]", final_err, 5e-3);
    }

    if (throw_on_failure) {
        for (const auto& chk : report.checks)
            if (!chk.pass) throw ConsistencyFailure(chk.name, chk.residual);
    }
    return report;
}

}  // namespace middev
