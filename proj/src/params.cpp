#include "middev/params.hpp"

#include <cmath>
#include <stdexcept>

#include "middev/errors.hpp"

namespace middev {

void ModelConfig::validate() const {
    if (!(gamma1 < 0.0) || !std::isfinite(gamma1))
        throw std::invalid_argument("params: gamma1 must be finite and < 0");
    if (!(gamma2 < 0.0) || !std::isfinite(gamma2))
        throw std::invalid_argument("params: gamma2 must be finite and < 0");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("params: delta must lie in (0,1)");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("params: sigma must be finite and > 0");
    if (n < 2) throw std::invalid_argument("params: n must be >= 2");
    if (scale.kind == ScaleKind::PowerLaw && !(scale.beta > 0.0))
        throw std::invalid_argument("params: power-law scale requires beta > 0");
    if (!(noise.sigma > 0.0))
        throw std::invalid_argument("params: noise sigma must be > 0");
}

double eval_scale(const DeviationScale& scale, double n) {
    switch (scale.kind) {
        case ScaleKind::PowerLaw: return std::pow(n, scale.beta);
        case ScaleKind::SqrtLog: return std::sqrt(std::log(n));
    }
    return 1.0;
}

ScheduleSample sample_schedule(const ModelConfig& config, std::int64_t n) {
    if (n < 2) throw std::invalid_argument("schedule: n must be >= 2");
    ScheduleSample s;
    s.n = n;
    s.kappa = std::pow(static_cast<double>(n), config.delta);
    s.theta_n = 1.0 + config.gamma1 / s.kappa;
    s.rho_n = (config.regime == Case::I) ? 1.0 + config.gamma2 / s.kappa
                                         : -1.0 - config.gamma2 / s.kappa;
    if (!(std::fabs(s.theta_n) < 1.0) || !(std::fabs(s.rho_n) < 1.0))
        throw NonStationaryAtN("schedule leaves (-1,1) at n = " + std::to_string(n));
    s.a_n = eval_scale(config.scale, static_cast<double>(n));
    const double tr = s.theta_n * s.rho_n;
    s.theta_star = (s.theta_n + s.rho_n) / (1.0 + tr);
    s.rho_star = tr * s.theta_star;
    s.d_star = 2.0 * (1.0 - s.rho_star);
    return s;
}

ScheduleSample sample_schedule(const ModelConfig& config) {
    return sample_schedule(config, config.n);
}

bool ConditionReport::all_pass() const {
    if (!chen_ledoux_pass) return false;
    for (const auto& c : conditions)
        if (!c.analytic_pass) return false;
    return true;
}

namespace {

/// Numeric value of one growth ratio at sample size n.
double growth_ratio(const ModelConfig& config, const std::string& which, double n) {
    const double a = eval_scale(config.scale, n);
    const double k = std::pow(n, config.delta);
    const double ln = std::log(n);
    const double a2 = a * a;
    if (which == "n/(a^6 k^2)") return n / (std::pow(a, 6.0) * k * k);
    if (which == "n/(a^2 k^5)") return n / (a2 * std::pow(k, 5.0));
    if (which == "n a^2/(k^5 log^2 n)") return n * a2 / (std::pow(k, 5.0) * ln * ln);
    if (which == "n/(a^6 k^6)") return n / (std::pow(a, 6.0) * std::pow(k, 6.0));
    if (which == "n/(a^2 k^11)") return n / (a2 * std::pow(k, 11.0));
    if (which == "n a^2/(k^7 log^2 n)") return n * a2 / (std::pow(k, 7.0) * ln * ln);
    throw std::logic_error("unknown growth ratio " + which);
}

ConditionCheck make_check(const ModelConfig& config, const std::string& name,
                          double exponent, const std::vector<std::int64_t>& n_grid) {
    ConditionCheck check;
    check.name = name;
    check.analytic_pass = exponent > 0.0;
    check.ratios.reserve(n_grid.size());
    for (const std::int64_t n : n_grid)
        check.ratios.push_back({n, growth_ratio(config, name, static_cast<double>(n))});
    return check;
}

}  // namespace

ConditionReport validate_conditions(const ModelConfig& config,
                                    const std::vector<std::int64_t>& n_grid) {
    config.validate();
    const double b = (config.scale.kind == ScaleKind::PowerLaw) ? config.scale.beta : 0.0;
    const double d = config.delta;
    ConditionReport report;
    if (config.regime == Case::I) {
        report.conditions.push_back(make_check(config, "n/(a^6 k^2)", 1.0 - 6.0 * b - 2.0 * d, n_grid));
        report.conditions.push_back(make_check(config, "n/(a^2 k^5)", 1.0 - 2.0 * b - 5.0 * d, n_grid));
        report.conditions.push_back(
            make_check(config, "n a^2/(k^5 log^2 n)", 1.0 + 2.0 * b - 5.0 * d, n_grid));
    } else {
        report.conditions.push_back(make_check(config, "n/(a^6 k^6)", 1.0 - 6.0 * b - 6.0 * d, n_grid));
        report.conditions.push_back(make_check(config, "n/(a^2 k^11)", 1.0 - 2.0 * b - 11.0 * d, n_grid));
        report.conditions.push_back(
            make_check(config, "n a^2/(k^7 log^2 n)", 1.0 + 2.0 * b - 7.0 * d, n_grid));
    }
    report.chen_ledoux_pass = config.noise.chen_ledoux;
    return report;
}

std::string case_name(Case c) { return c == Case::I ? "I" : "II"; }

Case case_from_name(const std::string& name) {
    if (name == "I") return Case::I;
    if (name == "II") return Case::II;
    throw std::invalid_argument("unknown case: " + name + " (expected I or II)");
}

ModelConfig config_from_json(const nlohmann::json& j) {
    ModelConfig c;
    c.regime = case_from_name(j.at("case").get<std::string>());
    c.gamma1 = j.at("gamma1").get<double>();
    c.gamma2 = j.at("gamma2").get<double>();
    c.delta = j.at("delta").get<double>();
    c.sigma = j.at("sigma").get<double>();
    c.n = j.at("n").get<std::int64_t>();
    const auto& sc = j.at("scale");
    const std::string kind = sc.at("kind").get<std::string>();
    if (kind == "power_law") {
        c.scale.kind = ScaleKind::PowerLaw;
        c.scale.beta = sc.at("beta").get<double>();
    } else if (kind == "sqrt_log") {
        c.scale.kind = ScaleKind::SqrtLog;
        c.scale.beta = 0.0;
    } else {
        throw std::invalid_argument("unknown scale kind: " + kind);
    }
    const auto& noise = j.at("noise");
    c.noise = make_noise(family_from_name(noise.at("family").get<std::string>()),
                         noise.value("sigma", c.sigma));
    c.validate();
    return c;
}

nlohmann::json config_to_json(const ModelConfig& config) {
    nlohmann::json j;
    j["case"] = case_name(config.regime);
    j["gamma1"] = config.gamma1;
    j["gamma2"] = config.gamma2;
    j["delta"] = config.delta;
    j["sigma"] = config.sigma;
    j["n"] = config.n;
    if (config.scale.kind == ScaleKind::PowerLaw)
        j["scale"] = {{"kind", "power_law"}, {"beta", config.scale.beta}};
    else
        j["scale"] = {{"kind", "sqrt_log"}};
    j["noise"] = {{"family", family_name(config.noise.family)}, {"sigma", config.noise.sigma}};
    return j;
}

nlohmann::json condition_report_to_json(const ConditionReport& report) {
    nlohmann::json j;
    j["chen_ledoux_pass"] = report.chen_ledoux_pass;
    j["all_pass"] = report.all_pass();
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : report.conditions) {
        nlohmann::json jc;
        jc["name"] = c.name;
        jc["analytic_pass"] = c.analytic_pass;
        jc["ratios"] = nlohmann::json::array();
        for (const auto& r : c.ratios) jc["ratios"].push_back({{"n", r.n}, {"value", r.value}});
        j["conditions"].push_back(jc);
    }
    return j;
}

}  // namespace middev
