#include "middev/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace middev {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string content_hash_hex(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64 offset basis
    for (const unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path() && !p.parent_path().empty()) {
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["model"] = config_to_json(cfg.model);
    j["replicas"] = cfg.replicas;
    j["master_seed"] = cfg.master_seed;
    j["experiment"] = experiment_name(cfg.experiment);
    j["thresholds"] = cfg.thresholds;
    j["statistic"] = cfg.statistic;
    // deliberately no "threads": worker count is execution plumbing and must
    // never influence result payloads (determinism contract)
    j["bt_x_coeffs"] = cfg.bt_x_coeffs;
    j["bt_y_fracs"] = cfg.bt_y_fracs;
    j["truncation_r"] = cfg.truncation_r;
    return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.model = config_from_json(j.at("model"));
    cfg.replicas = j.value("replicas", std::int64_t{1});
    cfg.master_seed = j.value("master_seed", std::uint64_t{1});
    cfg.experiment = experiment_from_name(j.value("experiment", std::string("concentration")));
    if (j.contains("thresholds")) cfg.thresholds = j.at("thresholds").get<std::vector<double>>();
    cfg.statistic = j.value("statistic", std::string("theta"));
    cfg.threads = j.value("threads", 0);
    if (j.contains("bt_x_coeffs")) cfg.bt_x_coeffs = j.at("bt_x_coeffs").get<std::vector<double>>();
    if (j.contains("bt_y_fracs")) cfg.bt_y_fracs = j.at("bt_y_fracs").get<std::vector<double>>();
    cfg.truncation_r = j.value("truncation_r", 1.0);
    cfg.validate();
    return cfg;
}

nlohmann::json result_to_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    nlohmann::json j;
    j["kind"] = experiment_name(result.kind);
    j["n"] = result.n;
    j["kappa"] = result.kappa;
    j["a_n"] = result.a_n;
    j["replicas"] = result.replicas;
    j["master_seed"] = result.master_seed;
    // deliberately no "wall_seconds": result files are byte-identical for a
    // given (config, seed); timing lives in the manifest only
    j["config"] = experiment_config_to_json(cfg);
    j["stats"] = nlohmann::json::array();
    for (const auto& s : result.stats) {
        j["stats"].push_back({{"name", s.name},
                              {"target", s.target},
                              {"estimate", s.estimate},
                              {"std_error", s.std_error},
                              {"replicas_used", s.replicas_used},
                              {"replicas_degenerate", s.replicas_degenerate}});
    }
    if (!result.tail.empty()) {
        j["tail"] = nlohmann::json::array();
        for (const auto& t : result.tail) {
            j["tail"].push_back({{"x", t.x},
                                 {"count", t.count},
                                 {"p_hat", t.p_hat},
                                 {"slope", t.slope},
                                 {"rate_prediction", t.rate_prediction},
                                 {"lower_bound_flag", t.lower_bound_flag}});
        }
    }
    if (!result.grid.empty()) {
        j["grid"] = nlohmann::json::array();
        for (const auto& p : result.grid) {
            j["grid"].push_back({{"x", p.x},
                                 {"y", p.y},
                                 {"hits", p.hits},
                                 {"trials", p.trials},
                                 {"frequency", p.frequency},
                                 {"bound", p.bound},
                                 {"pass", p.pass}});
        }
    }
    if (result.kind == ExperimentKind::Truncation) {
        j["truncation"] = {{"r", result.truncation.r},
                           {"mean_gap", result.truncation.mean_gap},
                           {"max_gap", result.truncation.max_gap},
                           {"qv", {{result.truncation.qv[0][0], result.truncation.qv[0][1]},
                                   {result.truncation.qv[1][0], result.truncation.qv[1][1]}}},
                           {"target", {{result.truncation.target[0][0], result.truncation.target[0][1]},
                                       {result.truncation.target[1][0], result.truncation.target[1][1]}}}};
    }
    return j;
}

std::string result_to_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "type,name,x,y,target,estimate,std_error,count,trials,flag\n";
    for (const auto& s : result.stats) {
        out << "stat," << s.name << ",,," << fmt(s.target) << ',' << fmt(s.estimate) << ','
            << fmt(s.std_error) << ',' << s.replicas_used << ','
            << (s.replicas_used + s.replicas_degenerate) << ",\n";
    }
    for (const auto& t : result.tail) {
        out << "tail,slope," << fmt(t.x) << ",," << fmt(t.rate_prediction) << ','
            << fmt(t.slope) << ",," << t.count << ",," << (t.lower_bound_flag ? "censored" : "")
            << '\n';
    }
    for (const auto& p : result.grid) {
        out << "bt,frequency," << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(p.bound) << ','
            << fmt(p.frequency) << ",," << p.hits << ',' << p.trials << ','
            << (p.pass ? "pass" : "fail") << '\n';
    }
    return out.str();
}

nlohmann::json rate_model_to_json(const RateModel& m) {
    auto mat = [](const Mat2& a) {
        return nlohmann::json{{a[0][0], a[0][1]}, {a[1][0], a[1][1]}};
    };
    nlohmann::json j;
    j["gamma1"] = m.gamma1;
    j["gamma2"] = m.gamma2;
    j["sigma"] = m.sigma;
    j["g"] = m.g;
    j["Gamma"] = mat(m.Gamma);
    j["Theta"] = mat(m.Theta);
    j["ThetaTilde"] = mat(m.ThetaTilde);
    j["Upsilon"] = mat(m.Upsilon);
    j["UpsilonTilde"] = {m.UpsilonTilde[0], m.UpsilonTilde[1]};
    j["noise"] = {{"family", family_name(m.noise.family)}, {"sigma", m.noise.sigma}};
    return j;
}

nlohmann::json consistency_report_to_json(const ConsistencyReport& report) {
    nlohmann::json j;
    j["all_pass"] = report.all_pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"name", c.name},
                               {"residual", c.residual},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    j["matching"] = nlohmann::json::array();
    for (const auto& m : report.matching) {
        j["matching"].push_back({{"name", m.name},
                                 {"kappa", m.kappa},
                                 {"value", m.value},
                                 {"target", m.target},
                                 {"rel_error", m.rel_error}});
    }
    return j;
}

nlohmann::json identity_report_to_json(const IdentityReport& report) {
    nlohmann::json j;
    j["tolerance"] = report.tolerance;
    j["max_rel_residual"] = report.max_rel_residual;
    j["all_pass"] = report.all_pass();
    j["identities"] = nlohmann::json::array();
    for (const auto& l : report.lines) {
        j["identities"].push_back({{"name", l.name},
                                   {"lhs", l.lhs},
                                   {"rhs", l.rhs},
                                   {"abs_residual", l.abs_residual},
                                   {"rel_residual", l.rel_residual},
                                   {"pass", l.pass}});
    }
    return j;
}

nlohmann::json inequality_report_to_json(const InequalityReport& report) {
    nlohmann::json j;
    j["all_pass"] = report.all_pass();
    j["inequalities"] = nlohmann::json::array();
    for (const auto& l : report.lines) {
        j["inequalities"].push_back({{"name", l.name},
                                     {"lhs", l.lhs},
                                     {"bound", l.bound},
                                     {"margin", l.margin},
                                     {"pass", l.pass}});
    }
    return j;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["tool_version"] = manifest.tool_version;
    j["config"] = manifest.config_echo;
    j["input_hash"] = manifest.input_hash;
    j["outputs"] = manifest.outputs;
    j["wall_seconds"] = manifest.wall_seconds;
    j["summary"] = manifest.summary;
    return j;
}

namespace {

constexpr double kWidth = 640.0, kHeight = 400.0;
constexpr double kLeft = 60.0, kRight = 610.0, kTop = 30.0, kBottom = 360.0;

double map_x(double v, double lo, double hi) {
    if (hi <= lo) return kLeft;
    return kLeft + (v - lo) / (hi - lo) * (kRight - kLeft);
}

double map_y(double v, double lo, double hi) {
    if (hi <= lo) return kBottom;
    return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop);
}

void svg_header(std::ostringstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"13\">"
        << title << "</text>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
        << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
}

void stats_bars(std::ostringstream& out, const ExperimentResult& result) {
    const std::size_t count = result.stats.size();
    if (count == 0) return;
    double lo = 0.0, hi = 0.0;
    for (const auto& s : result.stats) {
        lo = std::min({lo, s.estimate, s.target});
        hi = std::max({hi, s.estimate, s.target});
    }
    if (hi == lo) hi = lo + 1.0;
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double band = (kRight - kLeft) / static_cast<double>(count);
    const double y0 = map_y(0.0, lo, hi);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& s = result.stats[i];
        const double cx = kLeft + (static_cast<double>(i) + 0.5) * band;
        const double bw = band * 0.45;
        const double ye = map_y(s.estimate, lo, hi);
        out << "<rect x=\"" << fmt6(cx - bw / 2) << "\" y=\"" << fmt6(std::min(ye, y0))
            << "\" width=\"" << fmt6(bw) << "\" height=\"" << fmt6(std::fabs(y0 - ye))
            << "\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
        const double yt = map_y(s.target, lo, hi);
        out << "<line x1=\"" << fmt6(cx - bw * 0.75) << "\" y1=\"" << fmt6(yt) << "\" x2=\""
            << fmt6(cx + bw * 0.75) << "\" y2=\"" << fmt6(yt)
            << "\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << fmt6(cx) << "\" y=\"" << kBottom + 16
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"9\">" << s.name
            << "</text>\n";
    }
}

void tail_plot(std::ostringstream& out, const ExperimentResult& result) {
    if (result.tail.empty()) return;
    double xhi = 0.0, yhi = 0.0;
    for (const auto& t : result.tail) {
        xhi = std::max(xhi, t.x);
        yhi = std::max({yhi, t.slope, t.rate_prediction});
    }
    xhi *= 1.1;
    yhi = (yhi == 0.0 ? 1.0 : yhi * 1.2);
    // rate-function parabola from the recorded predictions (quadratic in x)
    double coeff = 0.0;
    for (const auto& t : result.tail)
        if (t.x > 0.0) coeff = t.rate_prediction / (t.x * t.x);
    out << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 64; ++i) {
        const double x = xhi * static_cast<double>(i) / 64.0;
        out << fmt6(map_x(x, 0.0, xhi)) << ',' << fmt6(map_y(coeff * x * x, 0.0, yhi)) << ' ';
    }
    out << "\"/>\n";
    for (const auto& t : result.tail) {
        out << "<circle cx=\"" << fmt6(map_x(t.x, 0.0, xhi)) << "\" cy=\""
            << fmt6(map_y(t.slope, 0.0, yhi)) << "\" r=\"4\" fill=\""
            << (t.lower_bound_flag ? "gray" : "steelblue") << "\"/>\n";
    }
}

void grid_plot(std::ostringstream& out, const ExperimentResult& result) {
    const std::size_t count = result.grid.size();
    if (count == 0) return;
    double hi = 0.0;
    for (const auto& p : result.grid) hi = std::max({hi, p.frequency, p.bound});
    if (hi == 0.0) hi = 1.0;
    hi *= 1.2;
    const double band = (kRight - kLeft) / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& p = result.grid[i];
        const double cx = kLeft + (static_cast<double>(i) + 0.5) * band;
        const double bw = band * 0.4;
        const double yf = map_y(p.frequency, 0.0, hi);
        out << "<rect x=\"" << fmt6(cx - bw / 2) << "\" y=\"" << fmt6(yf) << "\" width=\""
            << fmt6(bw) << "\" height=\"" << fmt6(kBottom - yf)
            << "\" fill=\"steelblue\" fill-opacity=\"0.7\"/>\n";
        const double yb = map_y(p.bound, 0.0, hi);
        out << "<line x1=\"" << fmt6(cx - bw * 0.8) << "\" y1=\"" << fmt6(yb) << "\" x2=\""
            << fmt6(cx + bw * 0.8) << "\" y2=\"" << fmt6(yb)
            << "\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
    }
}

}  // namespace

std::string render_plot_svg(const ExperimentResult& result) {
    std::ostringstream out;
    svg_header(out, experiment_name(result.kind));
    switch (result.kind) {
        case ExperimentKind::TailSlope: tail_plot(out, result); break;
        case ExperimentKind::BercuTouati: grid_plot(out, result); break;
        default: stats_bars(out, result); break;
    }
    out << "</svg>\n";
    return out.str();
}

void emit_plot(const ExperimentResult& result, const std::string& path) {
    write_text_file(path, render_plot_svg(result));
}

std::string render_report_markdown(const std::vector<nlohmann::json>& manifests) {
    std::ostringstream out;
    out << "# Run report\n\n";
    if (manifests.empty()) out << "_No manifests._\n";
    for (std::size_t i = 0; i < manifests.size(); ++i) {
        const auto& m = manifests[i];
        out << "## Run " << (i + 1) << "\n\n";
        out << "- tool: " << m.value("tool_version", std::string("?")) << "\n";
        out << "- input hash: `" << m.value("input_hash", std::string("?")) << "`\n";
        out << "- wall seconds: " << fmt6(m.value("wall_seconds", 0.0)) << "\n";
        out << "- summary: " << m.value("summary", std::string()) << "\n";
        if (m.contains("outputs")) {
            out << "- outputs:\n";
            for (const auto& o : m.at("outputs")) out << "  - `" << o.get<std::string>() << "`\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace middev
