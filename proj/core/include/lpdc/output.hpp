#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "lpdc/design.hpp"
#include "lpdc/entanglement.hpp"
#include "lpdc/hom.hpp"

namespace lpdc {

using Metadata = std::vector<std::pair<std::string, std::string>>;

// "%.12e"; the one number format used in CSV output.
std::string format_number(double value);

/// Comma-separated matrix, one row per line, preceded by "# key: value" lines.
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m, const Metadata& meta = {});
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// Named columns of equal length with a header line.
void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns, const Metadata& meta = {});

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

/// <prefix>_re.csv, <prefix>_im.csv, <prefix>_jsi.csv (|f|^2), <prefix>_axes.csv
/// and the <prefix>.json sidecar describing the grid.
void write_jsa(const std::filesystem::path& dir, const JointAmplitude& jsa, const std::string& prefix = "jsa",
               const nlohmann::json& extra = {});

/// Reads the sidecar written by write_jsa and the matrices it names.
JointAmplitude read_jsa(const std::filesystem::path& sidecar);

nlohmann::json to_json(const FrequencyGrid& grid);
nlohmann::json to_json(const SchmidtResult& result);  // spectrum truncated below 1e-12
nlohmann::json to_json(const HomSummary& summary);
nlohmann::json to_json(const SpacerSolution& solution, const DesignSpec& spec);
nlohmann::json to_json(const std::vector<PairCandidate>& scan);
nlohmann::json to_json(const ToleranceReport& report);

void write_hom_trace(const std::filesystem::path& csv, const HomTrace& trace);

}  // namespace lpdc
