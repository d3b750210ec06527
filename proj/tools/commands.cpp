#include "commands.hpp"

#include <cstdio>
#include <filesystem>

#include "lpdc/design.hpp"
#include "lpdc/entanglement.hpp"
#include "lpdc/error.hpp"
#include "lpdc/figures.hpp"
#include "lpdc/hom.hpp"
#include "lpdc/output.hpp"
#include "lpdc/stack_io.hpp"
#include "lpdc/units.hpp"

namespace lpdc::cli {
namespace {

constexpr double kFsPerMm = 1e3;  // fs/um -> fs/mm

DesignSpec make_spec(const MaterialDb& db, const DesignArgs& a) {
  DesignSpec spec(db.get(a.crystal), mm_to_um(a.crystal_mm), db.get(a.spacer));
  spec.crystals = a.crystals;
  spec.target = parse_design_target(a.target);
  spec.orientation = deg_to_rad(a.orientation_deg);
  spec.axis_flip = a.axis_flip;
  spec.pump = PumpSpec::from_fwhm(a.pump_nm, a.fwhm_nm);
  return spec;
}

Polarization extraordinary_at(std::optional<double> angle_deg, double fallback_deg) {
  const double deg = angle_deg.value_or(fallback_deg);
  if (!(deg >= 0.0 && deg <= 90.0)) throw Error(ErrorCode::invalid_input, "--angle must lie in [0, 90] degrees");
  return Polarization::extraordinary(deg_to_rad(deg));
}

FrequencyGrid grid_of(const Globals& g, const StackConfig& cfg) { return cfg.grid(g.grid, g.span); }

}  // namespace

MaterialDb Globals::database() const {
  MaterialDb db = MaterialDb::builtin();
  if (!materials.empty()) db.merge(MaterialDb::from_file(materials));
  return db;
}

int cmd_index(const Globals& g, const IndexArgs& a) {
  const MaterialDb db = g.database();
  const Material& m = db.get(a.material);
  const bool ordinary_only = a.angle_deg && *a.angle_deg == 0.0;
  const Polarization e = extraordinary_at(a.angle_deg, 90.0);
  if (ordinary_only) {
    std::printf("%-10s %-12s %-14s\n", "lambda_nm", "n_o", "k'_o_fs/mm");
  } else {
    std::printf("%-10s %-12s %-12s %-14s %-14s   (angle %.3f deg)\n", "lambda_nm", "n_o", "n_e", "k'_o_fs/mm",
                "k'_e_fs/mm", rad_to_deg(e.angle()));
  }
  for (double nm : a.wavelengths_nm) {
    const double um = nm_to_um(nm);
    m.require_in_range(um);
    const double w = wavelength_to_omega(um);
    const double no = refractive_index(m, Polarization::ordinary(), um);
    const double ko = reciprocal_group_velocity(m, Polarization::ordinary(), w) * kFsPerMm;
    if (ordinary_only) {
      std::printf("%-10.3f %-12.8f %-14.4f\n", nm, no, ko);
    } else {
      std::printf("%-10.3f %-12.8f %-12.8f %-14.4f %-14.4f\n", nm, no, refractive_index(m, e, um), ko,
                  reciprocal_group_velocity(m, e, w) * kFsPerMm);
    }
  }
  return 0;
}

int cmd_gvm(const Globals& g, const IndexArgs& a) {
  const MaterialDb db = g.database();
  const Material& m = db.get(a.material);
  const Polarization e = extraordinary_at(a.angle_deg, 90.0);
  for (double nm : a.wavelengths_nm) {
    const double um = nm_to_um(nm);
    m.require_in_range(um);
    const double w = wavelength_to_omega(um);
    const double d = reciprocal_group_velocity(m, e, w) - reciprocal_group_velocity(m, Polarization::ordinary(), w);
    std::printf("%s %.3f nm, angle %.3f deg: k'_e - k'_o = %.3f fs/mm\n", m.name().c_str(), nm,
                rad_to_deg(e.angle()), d * kFsPerMm);
  }
  return 0;
}

int cmd_phasematch(const Globals& g, const IndexArgs& a) {
  const MaterialDb db = g.database();
  const Material& m = db.get(a.material);
  for (double nm : a.wavelengths_nm) {
    const double angle = phasematch_angle(m, nm_to_um(nm));
    std::printf("%s pump %.3f nm: type-II cut angle %.4f deg\n", m.name().c_str(), nm, rad_to_deg(angle));
  }
  return 0;
}

int cmd_design(const Globals& g, const DesignArgs& a) {
  const MaterialDb db = g.database();
  const DesignSpec spec = make_spec(db, a);
  const SpacerSolution sol = solve_spacer_length(spec);
  std::printf("h = %.4f mm, h/L = %.4f, tau+ = %.6g fs, tau- = %.6g fs, cut %.4f deg\n", um_to_mm(sol.length),
              sol.ratio, sol.achieved.plus, sol.achieved.minus, rad_to_deg(sol.cut_angle));
  if (!a.out.empty()) write_json(a.out, to_json(sol, spec));
  return 0;
}

int cmd_scan(const Globals& g, const ScanArgs& a) {
  const MaterialDb db = g.database();
  const DesignSpec spec = make_spec(db, a.design);
  std::vector<Material> candidates;
  for (const auto& name : a.candidates.empty() ? db.names() : a.candidates) candidates.push_back(db.get(name));
  const auto rows = material_pair_scan(spec, candidates);
  for (const auto& r : rows) {
    if (r.feasible) {
      std::printf("%-16s feasible  h/L = %-10.4f |dkappa0| = %.4g rad/um\n", r.spacer.c_str(), r.ratio,
                  r.spacer_mismatch);
    } else {
      std::printf("%-16s infeasible                |dkappa0| = %.4g rad/um\n", r.spacer.c_str(), r.spacer_mismatch);
    }
  }
  if (!a.design.out.empty()) write_json(a.design.out, to_json(rows));
  return 0;
}

int cmd_jsa(const Globals& g, const JsaArgs& a) {
  const MaterialDb db = g.database();
  const StackConfig cfg = load_stack_config(a.io.stack, db);
  JsaMode mode = JsaMode::full;
  if (a.mode == "dirichlet") {
    mode = JsaMode::dirichlet_only;
  } else if (a.mode != "full") {
    throw Error(ErrorCode::invalid_input, "--mode must be full or dirichlet");
  }
  const FrequencyGrid grid = grid_of(g, cfg);
  const JointAmplitude jsa = synthesize_jsa(cfg.superlattice(), cfg.pump, grid, mode);
  nlohmann::json context{{"stack", describe_stack(cfg.superlattice())},
                         {"mode", a.mode},
                         {"stack_hash", fnv1a_hex(cfg.source.dump())}};
  write_jsa(a.io.out, jsa, "jsa", context);
  std::printf("grid %zux%zu half-width %.6g rad/fs, symmetry residual %.6g\n", grid.signal_points, grid.idler_points,
              grid.signal_half_width, symmetry_residual(jsa));
  return 0;
}

int cmd_schmidt(const Globals& g, const SchmidtArgs& a) {
  if (a.stack.empty() == a.jsa.empty()) {
    throw Error(ErrorCode::invalid_input, "give either a stack file or --jsa");
  }
  JointAmplitude jsa = [&] {
    if (!a.jsa.empty()) return read_jsa(a.jsa);
    const MaterialDb db = g.database();
    const StackConfig cfg = load_stack_config(a.stack, db);
    return synthesize_jsa(cfg.superlattice(), cfg.pump, grid_of(g, cfg));
  }();
  const SchmidtResult r = schmidt_decompose(jsa);
  std::printf("K = %.6f, purity = %.6f, entropy = %.6f bits\n", r.schmidt_number, r.purity, r.entropy);
  if (!a.out.empty()) write_json(a.out, to_json(r));
  return 0;
}

int cmd_hom(const Globals& g, const HomArgs& a) {
  const MaterialDb db = g.database();
  const StackConfig cfg = load_stack_config(a.io.stack, db);
  const FrequencyGrid grid = grid_of(g, cfg);
  const JointAmplitude jsa = synthesize_jsa(cfg.superlattice(), cfg.pump, grid);
  DelayWindow window = default_delay_window(cfg.superlattice(), grid, a.points);
  if (a.min_fs) window.min_fs = *a.min_fs;
  if (a.max_fs) window.max_fs = *a.max_fs;
  const HomTrace trace = hom_trace(jsa, window, a.beta);
  const std::filesystem::path out(a.io.out);
  write_hom_trace(out / "hom_trace.csv", trace);
  const HomSummary s = visibility_and_width(trace);
  nlohmann::json summary = to_json(s);
  summary["delay_window_fs"] = {window.min_fs, window.max_fs};
  summary["mode_overlap"] = a.beta;
  write_json(out / "hom_summary.json", summary);
  if (s.width) {
    std::printf("V = %.6f, width = %.3f fs, minima = %zu%s\n", s.visibility, *s.width, s.minima.size(),
                s.multimodal ? " (multimodal)" : "");
  } else {
    std::printf("V = %.6f, width undefined, minima = %zu\n", s.visibility, s.minima.size());
  }
  return 0;
}

int cmd_tolerance(const Globals& g, const ToleranceArgs& a) {
  const MaterialDb db = g.database();
  TolerancePreset p = a.preset.empty() ? TolerancePreset{make_spec(db, a.design), {}} : tolerance_preset(a.preset, db);
  if (g.grid) p.options.grid_points = *g.grid;
  if (a.free_phase) p.options.hold_constant_phase = false;
  const ToleranceReport report = tolerance_sweep(p.spec, p.options);
  std::printf("design h = %.4f mm (h/L = %.4f), %d crystals\n", um_to_mm(report.design.length), report.design.ratio,
              p.spec.crystals);
  for (const auto& t : report.tolerances) {
    std::printf("  %-18s threshold %-8.4g tolerance %.3f%%%s\n", to_string(t.metric).c_str(), t.threshold,
                100.0 * t.tolerance, t.monotone ? "" : " (non-monotone)");
  }
  if (!a.out.empty()) write_json(a.out, to_json(report));
  return 0;
}

int cmd_walkoff(const Globals& g, const WalkoffArgs& a) {
  const MaterialDb db = g.database();
  const StackConfig cfg = load_stack_config(a.io.stack, db);
  const Superlattice& stack = cfg.superlattice();
  double birth = 0.0;
  if (a.birth_um) {
    birth = *a.birth_um;
  } else {
    for (const auto& s : stack.segments()) {
      if (s.kind == SegmentKind::nonlinear) {
        birth += 0.5 * s.length;
        break;
      }
      birth += s.length;
    }
  }
  const WalkoffTimeline t = stack.walkoff_timeline(birth);
  if (!a.io.out.empty()) {
    std::vector<double> z, ts, ti;
    for (std::size_t k = 0; k < t.signal.size(); ++k) {
      z.push_back(t.signal[k].position);
      ts.push_back(t.signal[k].delay);
      ti.push_back(t.idler[k].delay);
    }
    write_columns_csv(a.io.out, {"position_um", "signal_delay_fs", "idler_delay_fs"}, {z, ts, ti});
  } else {
    std::printf("%-14s %-16s %-16s\n", "position_um", "signal_fs", "idler_fs");
    for (std::size_t k = 0; k < t.signal.size(); ++k) {
      std::printf("%-14.3f %-16.6f %-16.6f\n", t.signal[k].position, t.signal[k].delay, t.idler[k].delay);
    }
  }
  std::printf("max |t_s - t_i| = %.4f fs\n", t.max_separation());
  return 0;
}

int cmd_figure(const Globals& g, const FigureArgs& a) {
  const MaterialDb db = g.database();
  const FigureResult r = run_figure(a.preset, a.outdir, db, {g.grid, g.span});
  for (const auto& f : r.files) std::printf("wrote %s\n", (std::filesystem::path(a.outdir) / f).string().c_str());
  const auto& s = r.summary;
  if (s.at("preset_kind") == "hom") {
    std::printf("V = %.6f, multimodal = %s\n", s.at("visibility").get<double>(),
                s.at("multimodal").get<bool>() ? "true" : "false");
  } else {
    std::printf("h/L = %.4f, symmetry residual %.4g -> %.4g\n", s.at("spacer_to_crystal_ratio").get<double>(),
                s.at("symmetry_residual_single_crystal").get<double>(),
                s.at("symmetry_residual_superlattice").get<double>());
  }
  return 0;
}

}  // namespace lpdc::cli
