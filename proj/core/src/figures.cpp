#include "lpdc/figures.hpp"

#include "lpdc/embedded_data.hpp"
#include "lpdc/entanglement.hpp"
#include "lpdc/error.hpp"
#include "lpdc/hom.hpp"
#include "lpdc/output.hpp"
#include "lpdc/stack_io.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

using nlohmann::json;

FrequencyGrid grid_for(const StackConfig& cfg, const FigureOverrides& o) {
  return cfg.grid(o.grid_points, o.grid_half_width);
}

void write_timeline(const std::filesystem::path& path, const WalkoffTimeline& t) {
  std::vector<double> z, ts, ti;
  for (std::size_t k = 0; k < t.signal.size(); ++k) {
    z.push_back(t.signal[k].position);
    ts.push_back(t.signal[k].delay);
    ti.push_back(t.idler[k].delay);
  }
  write_columns_csv(path, {"position_um", "signal_delay_fs", "idler_delay_fs"}, {z, ts, ti});
}

FigureResult jsa_panels(const json& preset, const std::filesystem::path& out, const MaterialDb& db,
                        const FigureOverrides& o) {
  const StackConfig cfg = parse_stack_config(preset.at("stack"), db);
  const Superlattice& stack = cfg.superlattice();
  if (!stack.is_periodic() || stack.crystal_count() < 2) {
    throw Error(ErrorCode::invalid_input, "jsa-panels presets need a periodic stack of at least two crystals");
  }
  const FrequencyGrid grid = grid_for(cfg, o);
  const Segment& crystal = stack.segments().front();
  const Superlattice single({crystal}, stack.config());
  const Superlattice contact({crystal, crystal}, stack.config());

  const auto n_s = static_cast<Eigen::Index>(grid.signal_points);
  const auto n_i = static_cast<Eigen::Index>(grid.idler_points);
  Eigen::MatrixXd pmf_single(n_s, n_i), pmf_lattice(n_s, n_i), pef(n_s, n_i);
  for (Eigen::Index r = 0; r < n_s; ++r) {
    const double ns = grid.signal_detuning(static_cast<std::size_t>(r));
    for (Eigen::Index c = 0; c < n_i; ++c) {
      const double ni = grid.idler_detuning(static_cast<std::size_t>(c));
      pmf_single(r, c) = stack.single_crystal_factor(ns, ni);
      pmf_lattice(r, c) = std::abs(stack.superlattice_factor(ns, ni));
      pef(r, c) = pump_envelope(cfg.pump, (ns + ni) / std::numbers::sqrt2);
    }
  }
  const JointAmplitude single_jsa = synthesize_jsa(single, cfg.pump, grid, JsaMode::full);
  const JointAmplitude lattice_jsa = synthesize_jsa(stack, cfg.pump, grid, JsaMode::dirichlet_only);
  const JointAmplitude full_jsa = synthesize_jsa(stack, cfg.pump, grid, JsaMode::full);

  const Metadata meta{{"rows", "signal detuning"}, {"columns", "idler detuning"}};
  FigureResult result;
  auto matrix = [&](const std::string& file, const Eigen::MatrixXd& m) {
    write_matrix_csv(out / file, m, meta);
    result.files.push_back(file);
  };
  matrix("pmf_single.csv", pmf_single);
  matrix("pmf_superlattice.csv", pmf_lattice);
  matrix("pef.csv", pef);
  matrix("jsi.csv", lattice_jsa.values.cwiseAbs2());

  write_columns_csv(out / "axes.csv", {"signal_detuning_rad_per_fs", "idler_detuning_rad_per_fs"},
                    {grid.signal_axis(), grid.idler_axis()});
  result.files.push_back("axes.csv");

  const double birth = 0.5 * crystal.length;
  const WalkoffTimeline contact_t = contact.walkoff_timeline(birth);
  const WalkoffTimeline lattice_t = stack.walkoff_timeline(birth);
  write_timeline(out / "walkoff_contact.csv", contact_t);
  write_timeline(out / "walkoff_superlattice.csv", lattice_t);
  result.files.push_back("walkoff_contact.csv");
  result.files.push_back("walkoff_superlattice.csv");

  const double res_single = symmetry_residual(single_jsa);
  const double res_lattice = symmetry_residual(lattice_jsa);
  json summary{{"preset_kind", "jsa-panels"},
               {"stack", describe_stack(stack)},
               {"grid", to_json(grid)},
               {"pump_sigma_rad_per_fs", cfg.pump.sigma},
               {"spacer_length_mm", um_to_mm(stack.spacer_length())},
               {"spacer_to_crystal_ratio", stack.spacer_length() / stack.crystal_length()},
               {"symmetry_residual_single_crystal", res_single},
               {"symmetry_residual_superlattice", res_lattice},
               {"symmetry_residual_full_pmf", symmetry_residual(full_jsa)},
               {"symmetry_improvement", res_single / res_lattice},
               {"schmidt_superlattice", to_json(schmidt_decompose(lattice_jsa))},
               {"max_walkoff_contact_fs", contact_t.max_separation()},
               {"max_walkoff_superlattice_fs", lattice_t.max_separation()}};
  if (preset.contains("reference_spacer_length_mm")) {
    summary["reference_spacer_length_mm"] = preset.at("reference_spacer_length_mm");
  }
  write_json(out / "summary.json", summary);
  result.files.push_back("summary.json");
  result.summary = std::move(summary);
  return result;
}

FigureResult hom_panel(const json& preset, const std::filesystem::path& out, const MaterialDb& db,
                       const FigureOverrides& o) {
  const StackConfig cfg = parse_stack_config(preset.at("stack"), db);
  const Superlattice& stack = cfg.superlattice();
  const FrequencyGrid grid = grid_for(cfg, o);
  const JointAmplitude jsa = synthesize_jsa(stack, cfg.pump, grid);
  DelayWindow window = default_delay_window(stack, grid, preset.value("delay_points", std::size_t{801}));
  const HomTrace trace = hom_trace(jsa, window);
  const HomSummary s = visibility_and_width(trace);

  FigureResult result;
  write_hom_trace(out / "hom_trace.csv", trace);
  result.files.push_back("hom_trace.csv");
  json summary = to_json(s);
  summary["preset_kind"] = "hom";
  summary["stack"] = describe_stack(stack);
  summary["grid"] = to_json(grid);
  summary["delay_window_fs"] = {window.min_fs, window.max_fs};
  summary["symmetry_residual"] = symmetry_residual(jsa);
  write_json(out / "hom_summary.json", summary);
  result.files.push_back("hom_summary.json");
  result.summary = std::move(summary);
  return result;
}

}  // namespace

PresetCatalog PresetCatalog::builtin() { return from_json(json::parse(embedded::presets_json())); }

PresetCatalog PresetCatalog::from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "lpdc-presets" || !doc.contains("presets")) {
    throw Error(ErrorCode::invalid_input, "not an lpdc-presets document");
  }
  PresetCatalog c;
  c.presets_ = doc.at("presets");
  return c;
}

std::vector<std::string> PresetCatalog::names() const {
  std::vector<std::string> out;
  for (auto it = presets_.begin(); it != presets_.end(); ++it) out.push_back(it.key());
  return out;
}

const json& PresetCatalog::get(const std::string& name) const {
  if (!presets_.contains(name)) {
    std::string known;
    for (const auto& n : names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::unknown_preset, "unknown preset '" + name + "' (known: " + known + ")");
  }
  return presets_.at(name);
}

FigureResult run_figure(const std::string& name, const std::filesystem::path& outdir, const MaterialDb& db,
                        const FigureOverrides& overrides, const PresetCatalog& catalog) {
  const json& preset = catalog.get(name);
  const std::string kind = preset.value("kind", "");
  try {
    if (kind == "jsa-panels") return jsa_panels(preset, outdir, db, overrides);
    if (kind == "hom") return hom_panel(preset, outdir, db, overrides);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, "preset '" + name + "': " + e.what());
  }
  throw Error(ErrorCode::unknown_preset, "preset '" + name + "' is a " + kind + " preset, not a figure");
}

TolerancePreset tolerance_preset(const std::string& name, const MaterialDb& db, const PresetCatalog& catalog) {
  const json& preset = catalog.get(name);
  if (preset.value("kind", "") != "tolerance") {
    throw Error(ErrorCode::unknown_preset, "preset '" + name + "' is not a tolerance preset");
  }
  try {
    const json& d = preset.at("design");
    const json& p = preset.at("pump");
    TolerancePreset out{DesignSpec{db.get(d.at("crystal").get<std::string>()),
                                   mm_to_um(d.at("crystal_length_mm").get<double>()),
                                   db.get(d.at("spacer").get<std::string>())},
                        {}};
    out.spec.crystals = d.at("crystals").get<int>();
    out.spec.target = parse_design_target(d.at("target").get<std::string>());
    if (out.spec.target == DesignTarget::orientation) out.spec.orientation = deg_to_rad(d.at("orientation_deg").get<double>());
    out.spec.axis_flip = d.value("axis_flip", false);
    out.spec.pump = PumpSpec::from_fwhm(p.at("center_nm").get<double>(), p.at("fwhm_nm").get<double>());
    if (preset.contains("grid")) out.options.grid_points = preset.at("grid").value("points", out.options.grid_points);
    out.options.hold_constant_phase = preset.value("hold_constant_phase", true);
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, "preset '" + name + "': " + e.what());
  }
}

}  // namespace lpdc
