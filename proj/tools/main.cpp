#include <cstdio>
#include <exception>
#include <functional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "lpdc/error.hpp"

namespace {

using namespace lpdc::cli;

// Usage and input problems exit with 2, failures inside a computation with 1.
int exit_code(lpdc::ErrorCode code) {
  switch (code) {
    case lpdc::ErrorCode::unknown_material:
    case lpdc::ErrorCode::unknown_preset:
    case lpdc::ErrorCode::out_of_range:
    case lpdc::ErrorCode::invalid_input:
    case lpdc::ErrorCode::io:
      return 2;
    default:
      return 1;
  }
}

void add_design_options(CLI::App* cmd, DesignArgs& d) {
  cmd->add_option("--crystal", d.crystal, "nonlinear crystal material")->capture_default_str();
  cmd->add_option("--L", d.crystal_mm, "crystal length, mm")->capture_default_str();
  cmd->add_option("--spacer", d.spacer, "spacer material")->capture_default_str();
  cmd->add_option("--target", d.target, "tau-minus | tau-plus | angle")->capture_default_str();
  cmd->add_option("--orientation", d.orientation_deg, "JSA orientation for --target angle, degrees");
  cmd->add_option("--crystals", d.crystals, "number of crystals")->capture_default_str();
  cmd->add_option("--pump", d.pump_nm, "pump centre wavelength, nm")->capture_default_str();
  cmd->add_option("--fwhm", d.fwhm_nm, "pump intensity FWHM, nm")->capture_default_str();
  cmd->add_flag("--axis-flip", d.axis_flip, "rotate the spacer axis by 90 degrees");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lpdc: superlattice photon-pair source simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--materials", g.materials, "extra materials JSON merged over the builtin database")
      ->check(CLI::ExistingFile);
  app.add_option("--grid", g.grid, "grid points per axis")->check(CLI::Range(64, 8192));
  app.add_option("--span", g.span, "grid half-width, rad/fs")->check(CLI::PositiveNumber);

  std::function<int()> run;

  IndexArgs index;
  auto* c_index = app.add_subcommand("index", "refractive indices and group delays");
  c_index->add_option("material", index.material)->required();
  c_index->add_option("wavelength_nm", index.wavelengths_nm)->required();
  c_index->add_option("--angle", index.angle_deg, "propagation angle to the optic axis, degrees");
  c_index->callback([&] { run = [&] { return cmd_index(g, index); }; });

  IndexArgs gvm;
  auto* c_gvm = app.add_subcommand("gvm", "k'_e(angle) - k'_o in fs/mm");
  c_gvm->add_option("material", gvm.material)->required();
  c_gvm->add_option("wavelength_nm", gvm.wavelengths_nm)->required();
  c_gvm->add_option("--angle", gvm.angle_deg, "degrees, default 90");
  c_gvm->callback([&] { run = [&] { return cmd_gvm(g, gvm); }; });

  IndexArgs pm;
  auto* c_pm = app.add_subcommand("phasematch", "degenerate collinear type-II cut angle");
  c_pm->add_option("material", pm.material)->required();
  c_pm->add_option("pump_nm", pm.wavelengths_nm)->required();
  c_pm->callback([&] { run = [&] { return cmd_phasematch(g, pm); }; });

  DesignArgs design;
  auto* c_design = app.add_subcommand("design", "solve the spacer length for a group-delay target");
  add_design_options(c_design, design);
  c_design->add_option("--out", design.out, "write the design report JSON here");
  c_design->callback([&] { run = [&] { return cmd_design(g, design); }; });

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "rank spacer materials for a target");
  add_design_options(c_scan, scan.design);
  c_scan->add_option("--candidates", scan.candidates, "spacer materials (default: all)")->delimiter(',');
  c_scan->add_option("--out", scan.design.out, "write the scan JSON here");
  c_scan->callback([&] { run = [&] { return cmd_scan(g, scan); }; });

  JsaArgs jsa;
  auto* c_jsa = app.add_subcommand("jsa", "synthesise the joint spectral amplitude of a stack");
  c_jsa->add_option("stack", jsa.io.stack, "stack JSON")->required()->check(CLI::ExistingFile);
  c_jsa->add_option("--out", jsa.io.out, "output directory")->required();
  c_jsa->add_option("--mode", jsa.mode, "full | dirichlet")->capture_default_str();
  c_jsa->callback([&] { run = [&] { return cmd_jsa(g, jsa); }; });

  SchmidtArgs schmidt;
  auto* c_schmidt = app.add_subcommand("schmidt", "Schmidt decomposition of a stack or a saved JSA");
  c_schmidt->add_option("stack", schmidt.stack, "stack JSON")->check(CLI::ExistingFile);
  c_schmidt->add_option("--jsa", schmidt.jsa, "JSA sidecar written by 'jsa'")->check(CLI::ExistingFile);
  c_schmidt->add_option("--out", schmidt.out, "write the result JSON here");
  c_schmidt->callback([&] { run = [&] { return cmd_schmidt(g, schmidt); }; });

  HomArgs hom;
  auto* c_hom = app.add_subcommand("hom", "Hong-Ou-Mandel coincidence trace");
  c_hom->add_option("stack", hom.io.stack, "stack JSON")->required()->check(CLI::ExistingFile);
  c_hom->add_option("--out", hom.io.out, "output directory")->required();
  c_hom->add_option("--min", hom.min_fs, "first delay, fs");
  c_hom->add_option("--max", hom.max_fs, "last delay, fs");
  c_hom->add_option("--points", hom.points, "delay samples")->capture_default_str();
  c_hom->add_option("--beta", hom.beta, "mode overlap in [0, 1]")->capture_default_str();
  c_hom->callback([&] { run = [&] { return cmd_hom(g, hom); }; });

  ToleranceArgs tol;
  auto* c_tol = app.add_subcommand("tolerance", "spacer thickness tolerance sweep");
  c_tol->add_option("--preset", tol.preset, "tolerance preset, e.g. calcite10");
  add_design_options(c_tol, tol.design);
  c_tol->add_flag("--free-phase", tol.free_phase, "do not trim the spacer phase when perturbing");
  c_tol->add_option("--out", tol.out, "write the report JSON here");
  c_tol->callback([&] { run = [&] { return cmd_tolerance(g, tol); }; });

  WalkoffArgs walk;
  auto* c_walk = app.add_subcommand("walkoff", "signal/idler delay relative to the pump along the stack");
  c_walk->add_option("stack", walk.io.stack, "stack JSON")->required()->check(CLI::ExistingFile);
  c_walk->add_option("--birth", walk.birth_um, "birth position, um (default: middle of the first crystal)");
  c_walk->add_option("--out", walk.io.out, "write CSV here instead of stdout");
  c_walk->callback([&] { run = [&] { return cmd_walkoff(g, walk); }; });

  FigureArgs fig;
  auto* c_fig = app.add_subcommand("figure", "run a figure preset (fig2, fig4a-d)");
  c_fig->add_option("preset", fig.preset)->required();
  c_fig->add_option("outdir", fig.outdir)->required();
  c_fig->callback([&] { run = [&] { return cmd_figure(g, fig); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return run();
  } catch (const lpdc::Error& e) {
    std::fprintf(stderr, "lpdc: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lpdc: %s\n", e.what());
    return 1;
  }
}
