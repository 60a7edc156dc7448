// middev: simulation / estimation / verification laboratory for the mildly
// stationary double autoregression and its two-stage estimators.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "middev/errors.hpp"
#include "middev/estimate.hpp"
#include "middev/harness.hpp"
#include "middev/io.hpp"
#include "middev/ledger.hpp"
#include "middev/params.hpp"
#include "middev/rates.hpp"
#include "middev/simulate.hpp"

namespace {

constexpr const char* kToolVersion = "middev 1.0.0";

// Exit codes (stable contract for CI scripts).
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kScientificFailure = 2;
constexpr int kIoFailure = 3;
constexpr int kUsage = 64;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::int64_t replicas = -1;  // -1: keep config/default
    int threads = 0;
    std::string format = "json";
    std::int64_t n_override = -1;
};

std::string out_dir_of(const CommonOpts& opts) {
    if (const char* env = std::getenv("MIDDEV_OUT"); env != nullptr && env[0] != '\0')
        return env;
    return opts.out_dir;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw middev::IoError("cannot open config file " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

/// Accepts either a bare model config or a full experiment config
/// (distinguished by the presence of a "model" key).
middev::ExperimentConfig load_experiment(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    if (j.contains("model")) return middev::experiment_config_from_json(j);
    middev::ExperimentConfig cfg;
    cfg.model = middev::config_from_json(j);
    return cfg;
}

void apply_overrides(middev::ExperimentConfig& cfg, const CommonOpts& opts) {
    cfg.master_seed = opts.seed;
    if (opts.replicas > 0) cfg.replicas = opts.replicas;
    cfg.threads = opts.threads;
    if (opts.n_override > 0) cfg.model.n = opts.n_override;
}

void persist(const middev::ExperimentConfig& cfg, const middev::ExperimentResult& result,
             const CommonOpts& opts, const std::string& stem,
             const std::string& summary) {
    const std::string dir = out_dir_of(opts);
    const nlohmann::json jres = middev::result_to_json(cfg, result);
    const std::string json_path = dir + "/" + stem + ".json";
    const std::string csv_path = dir + "/" + stem + ".csv";
    const std::string svg_path = dir + "/" + stem + ".svg";
    middev::write_text_file(json_path, jres.dump(2) + "\n");
    middev::write_text_file(csv_path, middev::result_to_csv(result));
    middev::emit_plot(result, svg_path);

    middev::RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.config_echo = middev::experiment_config_to_json(cfg);
    manifest.input_hash = middev::content_hash_hex(manifest.config_echo.dump());
    manifest.outputs = {json_path, csv_path, svg_path};
    manifest.wall_seconds = result.wall_seconds;
    manifest.summary = summary;
    middev::write_text_file(dir + "/" + stem + ".manifest.json",
                            middev::manifest_to_json(manifest).dump(2) + "\n");

    if (opts.format == "csv")
        std::cout << middev::result_to_csv(result);
    else
        std::cout << jres.dump(2) << "\n";
}

int cmd_simulate(const CommonOpts& opts) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    apply_overrides(cfg, opts);
    const middev::Trajectory traj = middev::generate(cfg.model, cfg.master_seed);
    std::ostringstream csv;
    middev::dump_csv(traj, csv);
    const std::string path = out_dir_of(opts) + "/trajectory.csv";
    middev::write_text_file(path, csv.str());
    std::cout << "wrote " << path << " (n=" << traj.n() << ", kappa=" << traj.schedule.kappa
              << ")\n";
    return kOk;
}

int cmd_estimate(const CommonOpts& opts) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    apply_overrides(cfg, opts);
    const middev::Trajectory traj = middev::generate(cfg.model, cfg.master_seed);
    const middev::EstimateSet est = middev::full_estimate(traj);
    std::ostringstream csv;
    middev::write_estimate_csv_header(csv);
    middev::write_estimate_csv_row(csv, cfg.master_seed, traj.n(), cfg.model.regime, est);
    const std::string path = out_dir_of(opts) + "/estimates.csv";
    middev::write_text_file(path, csv.str());
    std::cout << csv.str();
    return kOk;
}

int cmd_identities(const CommonOpts& opts) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    apply_overrides(cfg, opts);
    const middev::Trajectory traj = middev::generate(cfg.model, cfg.master_seed);
    const middev::EstimateSet est = middev::full_estimate(traj);
    const middev::StatLedger led = middev::build_ledger(traj, est);
    const middev::IdentityReport ids =
        middev::check_identities(traj, est, led, 1e-9, /*throw_on_failure=*/false);
    const middev::InequalityReport ineqs =
        middev::check_inequalities(traj, led, /*throw_on_failure=*/false);
    const middev::SignFlipReport flip = middev::sign_flip(traj);

    std::ostringstream csv;
    csv << "name,lhs,rhs,abs_residual,rel_residual,pass\n";
    for (const auto& l : ids.lines) {
        char line[256];
        std::snprintf(line, sizeof line, "%s,%.17g,%.17g,%.3e,%.3e,%d\n", l.name.c_str(),
                      l.lhs, l.rhs, l.abs_residual, l.rel_residual, l.pass ? 1 : 0);
        csv << line;
    }
    const std::string dir = out_dir_of(opts);
    middev::write_text_file(dir + "/identities.csv", csv.str());
    nlohmann::json j;
    j["identities"] = middev::identity_report_to_json(ids);
    j["inequalities"] = middev::inequality_report_to_json(ineqs);
    j["sign_flip_max_abs_mapping_error"] = flip.max_abs_mapping_error;
    middev::write_text_file(dir + "/identities.json", j.dump(2) + "\n");
    std::cout << csv.str();
    const bool ok =
        ids.all_pass() && ineqs.all_pass() && flip.max_abs_mapping_error <= 1e-12;
    return ok ? kOk : kScientificFailure;
}

int cmd_validate_params(const CommonOpts& opts) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    apply_overrides(cfg, opts);
    const std::vector<std::int64_t> grid = {1000, 10000, 100000, 1000000};
    const middev::ConditionReport report = middev::validate_conditions(cfg.model, grid);
    const nlohmann::json j = middev::condition_report_to_json(report);
    middev::write_text_file(out_dir_of(opts) + "/conditions.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return report.all_pass() ? kOk : kValidationFailure;
}

int cmd_experiment(const CommonOpts& opts, middev::ExperimentKind kind,
                   const std::vector<double>& thresholds, const std::string& statistic,
                   double trunc_r) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    apply_overrides(cfg, opts);
    cfg.experiment = kind;
    if (!thresholds.empty()) cfg.thresholds = thresholds;
    if (!statistic.empty()) cfg.statistic = statistic;
    if (trunc_r > 0.0) cfg.truncation_r = trunc_r;
    const middev::ExperimentResult result = middev::run(cfg);

    bool sci_ok = true;
    std::ostringstream summary;
    summary << middev::experiment_name(kind) << ": n=" << result.n
            << " replicas=" << result.replicas;
    if (kind == middev::ExperimentKind::BercuTouati) {
        for (const auto& p : result.grid) sci_ok = sci_ok && p.pass;
        summary << (sci_ok ? " all grid points within bound" : " BOUND EXCEEDED");
    }
    persist(cfg, result, opts, middev::experiment_name(kind), summary.str());
    if (kind == middev::ExperimentKind::BercuTouati && !sci_ok) return kScientificFailure;
    return kOk;
}

int cmd_rates(const CommonOpts& opts) {
    middev::ExperimentConfig cfg = load_experiment(opts.config_path);
    const middev::RateModel model = middev::build_rate_model(
        cfg.model.gamma1, cfg.model.gamma2, cfg.model.sigma, cfg.model.noise);
    const middev::ConsistencyReport report =
        middev::consistency_check(model, /*throw_on_failure=*/false);
    nlohmann::json j;
    j["model"] = middev::rate_model_to_json(model);
    j["consistency"] = middev::consistency_report_to_json(report);
    middev::write_text_file(out_dir_of(opts) + "/rates.json", j.dump(2) + "\n");
    std::cout << j["consistency"].dump(2) << "\n";
    return report.all_pass() ? kOk : kScientificFailure;
}

int cmd_report(const CommonOpts& opts, const std::vector<std::string>& inputs) {
    std::vector<nlohmann::json> manifests;
    manifests.reserve(inputs.size());
    for (const auto& path : inputs) manifests.push_back(load_json_file(path));
    const std::string md = middev::render_report_markdown(manifests);
    const std::string path = out_dir_of(opts) + "/report.md";
    middev::write_text_file(path, md);
    std::cout << md;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mildly stationary double autoregression laboratory"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonOpts opts;
    std::vector<double> thresholds;
    std::string statistic;
    double trunc_r = -1.0;
    std::vector<std::string> report_inputs;

    auto add_common = [&](CLI::App* sub, bool need_config = true) {
        auto* copt = sub->add_option("--config", opts.config_path, "model/experiment JSON");
        if (need_config) copt->required();
        sub->add_option("--seed", opts.seed, "master seed (64-bit)");
        sub->add_option("--out", opts.out_dir, "output directory (MIDDEV_OUT overrides)");
        sub->add_option("--replicas", opts.replicas, "replica count override");
        sub->add_option("--threads", opts.threads, "worker threads (0 = auto; never affects results)");
        sub->add_option("--format", opts.format, "stdout format: csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--n", opts.n_override, "sample size override");
    };

    CLI::App* c_sim = app.add_subcommand("simulate", "generate one trajectory CSV");
    add_common(c_sim);
    CLI::App* c_est = app.add_subcommand("estimate", "two-stage estimates for one trajectory");
    add_common(c_est);
    CLI::App* c_ids = app.add_subcommand("identities", "verify all pathwise decompositions");
    add_common(c_ids);
    CLI::App* c_val = app.add_subcommand("validate-params", "check the growth conditions");
    add_common(c_val);
    CLI::App* c_con = app.add_subcommand("concentration", "concentration-limit experiment");
    add_common(c_con);
    CLI::App* c_var = app.add_subcommand("variance", "variance/covariance matching experiment");
    add_common(c_var);
    CLI::App* c_tail = app.add_subcommand("tailslope", "moderate-deviation tail slopes");
    add_common(c_tail);
    c_tail->add_option("--x", thresholds, "thresholds (positive)");
    c_tail->add_option("--statistic", statistic, "theta|rho|d|L|Lambda");
    CLI::App* c_bt = app.add_subcommand("bercu-touati", "exponential-inequality frequency scan");
    add_common(c_bt);
    CLI::App* c_tr = app.add_subcommand("truncation", "truncation diagnostics");
    add_common(c_tr);
    c_tr->add_option("--r", trunc_r, "truncation parameter r > 0");
    CLI::App* c_rates = app.add_subcommand("rates", "rate-function consistency checks");
    add_common(c_rates);
    CLI::App* c_rep = app.add_subcommand("report", "concatenate manifests into markdown");
    add_common(c_rep, /*need_config=*/false);
    c_rep->add_option("inputs", report_inputs, "manifest JSON files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (c_sim->parsed()) return cmd_simulate(opts);
        if (c_est->parsed()) return cmd_estimate(opts);
        if (c_ids->parsed()) return cmd_identities(opts);
        if (c_val->parsed()) return cmd_validate_params(opts);
        if (c_con->parsed())
            return cmd_experiment(opts, middev::ExperimentKind::Concentration, {}, "", -1.0);
        if (c_var->parsed())
            return cmd_experiment(opts, middev::ExperimentKind::VarianceMatch, {}, "", -1.0);
        if (c_tail->parsed())
            return cmd_experiment(opts, middev::ExperimentKind::TailSlope, thresholds, statistic,
                                  -1.0);
        if (c_bt->parsed())
            return cmd_experiment(opts, middev::ExperimentKind::BercuTouati, {}, "", -1.0);
        if (c_tr->parsed())
            return cmd_experiment(opts, middev::ExperimentKind::Truncation, {}, "", trunc_r);
        if (c_rates->parsed()) return cmd_rates(opts);
        if (c_rep->parsed()) return cmd_report(opts, report_inputs);
    } catch (const middev::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const middev::DivergentIdentity& e) {
        std::cerr << "identity failure: " << e.what() << "\n";
        return kScientificFailure;
    } catch (const middev::ConsistencyFailure& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kScientificFailure;
    } catch (const middev::InequalityViolated& e) {
        std::cerr << "inequality violated: " << e.what() << "\n";
        return kScientificFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
    return kUsage;
}
