#pragma once

#include <string_view>

namespace lpdc::embedded {

// Contents of data/materials.json and data/presets.json at build time.
std::string_view materials_json();
std::string_view presets_json();

}  // namespace lpdc::embedded
