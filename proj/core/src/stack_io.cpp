#include "lpdc/stack_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpdc/design.hpp"
#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::invalid_input, std::string(where) + " needs \"" + key + "\"");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key, const char* where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw Error(ErrorCode::invalid_input, std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

Photon parse_photon(const json& doc) {
  if (!doc.contains("extraordinary_photon")) return Photon::signal;
  const std::string p = doc.at("extraordinary_photon").get<std::string>();
  if (p == "signal") return Photon::signal;
  if (p == "idler") return Photon::idler;
  throw Error(ErrorCode::invalid_input, "extraordinary_photon must be \"signal\" or \"idler\"");
}

std::vector<Segment> parse_segments(const json& list, const MaterialDb& db, const PumpSpec& pump) {
  if (!list.is_array() || list.empty()) throw Error(ErrorCode::invalid_input, "\"segments\" must be a non-empty array");
  std::vector<Segment> out;
  for (const json& s : list) {
    const std::string kind = require(s, "kind", "segment").get<std::string>();
    const Material& m = db.get(require(s, "material", "segment").get<std::string>());
    const double length = mm_to_um(number(s, "length_mm", "segment"));
    if (kind == "crystal") {
      out.push_back(Segment::crystal(m, length, phasematch_angle(m, pump.center_wavelength_um())));
    } else if (kind == "spacer") {
      out.push_back(Segment::spacer(m, length, s.value("axis_flip", false)));
    } else {
      throw Error(ErrorCode::invalid_input, "segment kind must be \"crystal\" or \"spacer\", got \"" + kind + "\"");
    }
  }
  return out;
}

std::vector<Segment> parse_superlattice(const json& sl, const MaterialDb& db, const PumpSpec& pump, Photon e) {
  const Material& crystal = db.get(require(sl, "crystal", "superlattice").get<std::string>());
  const Material& spacer = db.get(require(sl, "spacer", "superlattice").get<std::string>());
  DesignSpec spec{crystal, mm_to_um(number(sl, "crystal_length_mm", "superlattice")), spacer};
  spec.crystals = require(sl, "crystals", "superlattice").get<int>();
  spec.axis_flip = sl.value("axis_flip", false);
  spec.pump = pump;
  spec.extraordinary_photon = e;
  if (spec.crystals < 1) throw Error(ErrorCode::invalid_input, "superlattice needs at least one crystal");

  const json& h = require(sl, "spacer_length_mm", "superlattice");
  double length = 0.0;
  if (h.is_number()) {
    length = mm_to_um(h.get<double>());
  } else if (h.is_string()) {
    spec.target = parse_design_target(h.get<std::string>());
    if (spec.target == DesignTarget::orientation) {
      spec.orientation = deg_to_rad(number(sl, "orientation_deg", "superlattice"));
    }
    length = solve_spacer_length(spec).length;
  } else {
    throw Error(ErrorCode::invalid_input, "superlattice.spacer_length_mm must be a number or a design target");
  }
  if (spec.crystals == 1) return {Segment::crystal(crystal, spec.crystal_length, spec.cut_angle())};
  return build_superlattice(spec, length).segments();
}

}  // namespace

FrequencyGrid StackConfig::grid(std::optional<std::size_t> points, std::optional<double> half_width) const {
  const std::size_t n = points.value_or(grid_points.value_or(512));
  const auto w = half_width ? half_width : grid_half_width;
  if (w) return FrequencyGrid::square(stack->config().omega0, *w, n);
  return default_grid(*stack, pump, n);
}

StackConfig parse_stack_config(const json& doc, const MaterialDb& db) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::invalid_input, "stack file must hold a JSON object");
    const json& p = require(doc, "pump", "stack file");
    StackConfig cfg;
    cfg.source = doc;
    cfg.pump = PumpSpec::from_fwhm(number(p, "center_nm", "pump"), number(p, "fwhm_nm", "pump"));
    const Photon e = parse_photon(doc);

    std::vector<Segment> segments;
    if (doc.contains("segments") == doc.contains("superlattice")) {
      throw Error(ErrorCode::invalid_input, "stack file needs exactly one of \"segments\" or \"superlattice\"");
    }
    segments = doc.contains("segments") ? parse_segments(doc.at("segments"), db, cfg.pump)
                                        : parse_superlattice(doc.at("superlattice"), db, cfg.pump, e);
    cfg.stack.emplace(std::move(segments), PhasematchConfig::degenerate(cfg.pump.center_wavelength_um(), e));

    if (doc.contains("grid")) {
      const json& g = doc.at("grid");
      if (g.contains("points")) cfg.grid_points = g.at("points").get<std::size_t>();
      if (g.contains("half_width")) cfg.grid_half_width = g.at("half_width").get<double>();
    }
    return cfg;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("malformed stack file: ") + e.what());
  }
}

StackConfig load_stack_config(const std::filesystem::path& path, const MaterialDb& db) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open stack file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, path.string() + ": " + e.what());
  }
  return parse_stack_config(doc, db);
}

json describe_stack(const Superlattice& stack) {
  json segs = json::array();
  for (const Segment& s : stack.segments()) {
    json j{{"kind", s.kind == SegmentKind::nonlinear ? "crystal" : "spacer"},
           {"material", s.material.name()},
           {"length_um", s.length}};
    if (s.kind == SegmentKind::nonlinear) j["cut_angle_deg"] = rad_to_deg(s.cut_angle);
    if (s.kind == SegmentKind::spacer) j["axis_flip"] = s.axis_flip;
    if (s.phase_offset != 0.0) j["phase_offset_rad"] = s.phase_offset;
    segs.push_back(std::move(j));
  }
  json out{{"segments", segs},
           {"omega0_rad_per_fs", stack.config().omega0},
           {"extraordinary_photon", stack.config().extraordinary_photon == Photon::signal ? "signal" : "idler"},
           {"periodic", stack.is_periodic()},
           {"crystals", stack.crystal_count()}};
  if (stack.is_periodic()) {
    const TauCoefficients t = stack.tau();
    out["tau_plus_fs"] = t.plus;
    out["tau_minus_fs"] = t.minus;
  }
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lpdc
