#pragma once

// Result persistence: JSON manifests, CSV tables, and static SVG plots.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "middev/harness.hpp"
#include "middev/ledger.hpp"
#include "middev/rates.hpp"

namespace middev {

/// Filesystem failure surfaced to the CLI (exit code 3).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// FNV-1a 64-bit content hash, lowercase hex; used to fingerprint configs
/// and result payloads in manifests.
[[nodiscard]] std::string content_hash_hex(const std::string& payload);

/// Write `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& content);

[[nodiscard]] nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);
[[nodiscard]] ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json result_to_json(const ExperimentConfig& cfg,
                                            const ExperimentResult& result);

/// One row per statistic / threshold / grid point, with a header line.
[[nodiscard]] std::string result_to_csv(const ExperimentResult& result);

[[nodiscard]] nlohmann::json rate_model_to_json(const RateModel& model);
[[nodiscard]] nlohmann::json consistency_report_to_json(const ConsistencyReport& report);
[[nodiscard]] nlohmann::json identity_report_to_json(const IdentityReport& report);
[[nodiscard]] nlohmann::json inequality_report_to_json(const InequalityReport& report);

/// Run manifest: tool version, config echo, input hash, output paths,
/// wall-clock seconds, and a one-line summary per experiment.
struct RunManifest {
    std::string tool_version;
    nlohmann::json config_echo;
    std::string input_hash;
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
    std::string summary;
};

[[nodiscard]] nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Self-contained deterministic SVG for a result: concentration estimates
/// vs target lines, variance bars vs limiting entries, or tail slopes vs
/// the rate-function parabola.  Empty results produce axes only.
[[nodiscard]] std::string render_plot_svg(const ExperimentResult& result);

/// Render and write the plot. Throws IoError on filesystem failure.
void emit_plot(const ExperimentResult& result, const std::string& path);

/// Concatenate prior run manifests (JSON files) into one markdown summary.
[[nodiscard]] std::string render_report_markdown(const std::vector<nlohmann::json>& manifests);

}  // namespace middev
