#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "lpdc/jsa.hpp"
#include "lpdc/materials.hpp"

namespace lpdc {

/// A parsed stack file.
///
///   {
///     "pump": {"center_nm": 400, "fwhm_nm": 1.95},
///     "extraordinary_photon": "signal",
///     "segments": [
///       {"kind": "crystal", "material": "BBO", "length_mm": 0.25},
///       {"kind": "spacer", "material": "quartz", "length_mm": 1.6, "axis_flip": false},
///       {"kind": "crystal", "material": "BBO", "length_mm": 0.25}
///     ],
///     "grid": {"points": 512, "half_width": 0.3}
///   }
///
/// Instead of "segments" a periodic stack may be written as
///
///   "superlattice": {"crystal": "BBO", "crystal_length_mm": 0.25,
///                    "spacer": "quartz", "spacer_length_mm": "tau-minus",
///                    "crystals": 2, "axis_flip": false}
///
/// where the spacer length is a number or a design target to solve for.
/// Crystals are always cut to phasematch the pump.
struct StackConfig {
  std::optional<Superlattice> stack;
  PumpSpec pump;
  std::optional<std::size_t> grid_points;
  std::optional<double> grid_half_width;  // rad/fs
  nlohmann::json source;                  // as parsed, for sidecars

  const Superlattice& superlattice() const { return *stack; }

  // Grid from the file, else default_grid(); explicit arguments win.
  FrequencyGrid grid(std::optional<std::size_t> points = std::nullopt,
                     std::optional<double> half_width = std::nullopt) const;
};

StackConfig parse_stack_config(const nlohmann::json& doc, const MaterialDb& db);
StackConfig load_stack_config(const std::filesystem::path& path, const MaterialDb& db);

nlohmann::json describe_stack(const Superlattice& stack);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace lpdc
