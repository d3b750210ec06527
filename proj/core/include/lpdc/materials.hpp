#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lpdc/dispersion.hpp"

namespace lpdc {

/// Named material dispersion models, read from the JSON materials file
/// (see data/materials.json for the schema). Lookup is case-insensitive.
class MaterialDb {
 public:
  MaterialDb() = default;

  // The materials file compiled into the library.
  static MaterialDb builtin();
  static MaterialDb from_json(std::string_view text);
  static MaterialDb from_file(const std::filesystem::path& path);

  // Adds or replaces entries from `other`.
  void merge(const MaterialDb& other);

  bool contains(std::string_view name) const;
  // Throws Error{unknown_material}.
  const Material& get(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  std::vector<Material> materials_;
};

}  // namespace lpdc
