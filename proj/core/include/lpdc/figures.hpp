#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpdc/design.hpp"
#include "lpdc/materials.hpp"

namespace lpdc {

/// Named parameter sets (data/presets.json). Parameters live in the data
/// file; this class only interprets them.
class PresetCatalog {
 public:
  static PresetCatalog builtin();
  static PresetCatalog from_json(const nlohmann::json& doc);

  std::vector<std::string> names() const;
  // Throws Error{unknown_preset}.
  const nlohmann::json& get(const std::string& name) const;

 private:
  nlohmann::json presets_;
};

struct FigureOverrides {
  std::optional<std::size_t> grid_points;
  std::optional<double> grid_half_width;
};

struct FigureResult {
  std::vector<std::string> files;  // relative to the output directory, in write order
  nlohmann::json summary;
};

/// Runs a "jsa-panels" or "hom" preset and writes its data files to `outdir`.
FigureResult run_figure(const std::string& name, const std::filesystem::path& outdir, const MaterialDb& db,
                        const FigureOverrides& overrides = {}, const PresetCatalog& catalog = PresetCatalog::builtin());

/// Design and sweep options of a "tolerance" preset.
struct TolerancePreset {
  DesignSpec spec;
  ToleranceOptions options;
};

TolerancePreset tolerance_preset(const std::string& name, const MaterialDb& db,
                                 const PresetCatalog& catalog = PresetCatalog::builtin());

}  // namespace lpdc
