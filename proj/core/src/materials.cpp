#include "lpdc/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lpdc/embedded_data.hpp"
#include "lpdc/error.hpp"

namespace lpdc {
namespace {

using nlohmann::json;

bool iequals(std::string_view a, std::string_view b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
    return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
  });
}

std::vector<std::pair<double, double>> read_pairs(const json& j, const char* key) {
  std::vector<std::pair<double, double>> out;
  if (!j.contains(key)) return out;
  for (const auto& p : j.at(key)) {
    if (!p.is_array() || p.size() != 2) {
      throw Error(ErrorCode::invalid_input, std::string("'") + key + "' entries must be [a, b] pairs");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

SellmeierTerms read_terms(const json& j) {
  SellmeierTerms t;
  t.constant = j.value("constant", 1.0);
  t.resonances = read_pairs(j, "resonances");
  t.poles = read_pairs(j, "poles");
  if (j.contains("powers")) t.powers = j.at("powers").get<std::vector<double>>();
  return t;
}

// n > 1 and finite on both axes over the whole valid range.
void validate(const Material& m) {
  constexpr int samples = 400;
  const auto& r = m.valid_range();
  for (int s = 0; s <= samples; ++s) {
    const double l = r.min_um + (r.max_um - r.min_um) * s / samples;
    for (const SellmeierTerms* terms : {&m.ordinary(), &m.extraordinary()}) {
      const double n2 = terms->index_squared(l);
      if (!std::isfinite(n2) || !(n2 > 1.0)) {
        std::ostringstream msg;
        msg << "material '" << m.name() << "' has n <= 1 or a singularity at " << l << " um";
        throw Error(ErrorCode::invalid_input, msg.str());
      }
    }
  }
}

}  // namespace

MaterialDb MaterialDb::builtin() { return from_json(embedded::materials_json()); }

MaterialDb MaterialDb::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("materials file: ") + e.what());
  }
  if (doc.value("format", std::string{"lpdc-materials"}) != "lpdc-materials") {
    throw Error(ErrorCode::invalid_input, "materials file: format is not lpdc-materials");
  }
  MaterialDb db;
  try {
    for (const auto& [name, entry] : doc.at("materials").items()) {
      const auto range = entry.at("valid_range_um").get<std::vector<double>>();
      if (range.size() != 2) {
        throw Error(ErrorCode::invalid_input, "valid_range_um of '" + name + "' must have two entries");
      }
      Material m(name, read_terms(entry.at("ordinary")), read_terms(entry.at("extraordinary")),
                 WavelengthRange{range[0], range[1]}, entry.value("source", std::string{}));
      validate(m);
      db.materials_.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("materials file: ") + e.what());
  }
  return db;
}

MaterialDb MaterialDb::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open materials file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

void MaterialDb::merge(const MaterialDb& other) {
  for (const auto& m : other.materials_) {
    auto it = std::find_if(materials_.begin(), materials_.end(),
                           [&](const Material& x) { return iequals(x.name(), m.name()); });
    if (it != materials_.end()) {
      *it = m;
    } else {
      materials_.push_back(m);
    }
  }
}

bool MaterialDb::contains(std::string_view name) const {
  return std::any_of(materials_.begin(), materials_.end(),
                     [&](const Material& m) { return iequals(m.name(), name); });
}

const Material& MaterialDb::get(std::string_view name) const {
  for (const auto& m : materials_) {
    if (iequals(m.name(), name)) return m;
  }
  std::string known;
  for (const auto& m : materials_) known += (known.empty() ? "" : ", ") + m.name();
  throw Error(ErrorCode::unknown_material, "'" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> MaterialDb::names() const {
  std::vector<std::string> out;
  out.reserve(materials_.size());
  for (const auto& m : materials_) out.push_back(m.name());
  return out;
}

}  // namespace lpdc
