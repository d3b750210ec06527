#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lpdc/error.hpp"
#include "lpdc/figures.hpp"
#include "lpdc/output.hpp"
#include "lpdc/stack_io.hpp"
#include "lpdc/units.hpp"

using namespace lpdc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const MaterialDb& db() {
  static const MaterialDb d = MaterialDb::builtin();
  return d;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(LPDC_TEST_TMP) / "io" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

json three_segments() {
  return json::parse(R"({
    "pump": {"center_nm": 405, "fwhm_nm": 2},
    "segments": [
      {"kind": "crystal", "material": "BBO", "length_mm": 0.25},
      {"kind": "spacer", "material": "quartz", "length_mm": 1.6},
      {"kind": "crystal", "material": "bbo", "length_mm": 0.25}
    ],
    "grid": {"points": 128, "half_width": 0.4}
  })");
}

}  // namespace

TEST_CASE("segment list stack") {
  const StackConfig cfg = parse_stack_config(three_segments(), db());
  const Superlattice& s = cfg.superlattice();
  REQUIRE(s.segments().size() == 3);
  CHECK(s.segments()[1].length == doctest::Approx(1600.0));
  CHECK(s.is_periodic());
  CHECK(cfg.pump.center_wavelength_nm == 405.0);
  const FrequencyGrid g = cfg.grid();
  CHECK(g.signal_points == 128);
  CHECK(g.signal_half_width == doctest::Approx(0.4));
  CHECK(cfg.grid(256).signal_points == 256);
  CHECK(rad_to_deg(s.segments()[0].cut_angle) == doctest::Approx(41.8842).epsilon(1e-5));
}

TEST_CASE("superlattice shorthand solves the spacer") {
  const json doc = json::parse(R"({
    "pump": {"center_nm": 400, "fwhm_nm": 1.95},
    "superlattice": {"crystal": "BBO", "crystal_length_mm": 0.25, "spacer": "quartz",
                     "spacer_length_mm": "tau-minus", "crystals": 3}
  })");
  const StackConfig cfg = parse_stack_config(doc, db());
  CHECK(cfg.superlattice().segments().size() == 5);
  CHECK(std::abs(cfg.superlattice().tau().minus) < 1e-6);
  CHECK(cfg.grid().signal_points == 512);
}

TEST_CASE("malformed stacks") {
  json doc = three_segments();
  doc["segments"][0]["material"] = "unobtainium";
  CHECK(code_of([&] { parse_stack_config(doc, db()); }) == ErrorCode::unknown_material);

  doc = three_segments();
  doc["segments"][1]["kind"] = "mirror";
  CHECK(code_of([&] { parse_stack_config(doc, db()); }) == ErrorCode::invalid_input);

  doc = three_segments();
  doc["superlattice"] = json::object();
  CHECK(code_of([&] { parse_stack_config(doc, db()); }) == ErrorCode::invalid_input);

  doc = three_segments();
  doc.erase("pump");
  CHECK(code_of([&] { parse_stack_config(doc, db()); }) == ErrorCode::invalid_input);

  CHECK(code_of([&] { load_stack_config(scratch("missing") / "nope.json", db()); }) == ErrorCode::io);
}

TEST_CASE("matrix CSV roundtrip keeps full precision") {
  const fs::path dir = scratch("csv");
  Eigen::MatrixXd m(3, 4);
  m << 1.0, -2.5e-17, 3.141592653589793, 0.0, 1e300, -1e-300, 7.0, 8.0, 0.1, 0.2, 0.3, 0.4;
  write_matrix_csv(dir / "m.csv", m, {{"units", "none"}});
  const Eigen::MatrixXd back = read_matrix_csv(dir / "m.csv");
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 4);
  CHECK((back - m).cwiseAbs().maxCoeff() <= 1e-11 * m.cwiseAbs().maxCoeff());
  for (Eigen::Index r = 0; r < 3; ++r)
    for (Eigen::Index c = 0; c < 4; ++c) CHECK(back(r, c) == doctest::Approx(m(r, c)).epsilon(1e-12));
  CHECK(format_number(0.5) == "5.000000000000e-01");
}

TEST_CASE("JSA files roundtrip") {
  const fs::path dir = scratch("jsa");
  const StackConfig cfg = parse_stack_config(three_segments(), db());
  const JointAmplitude f = synthesize_jsa(cfg.superlattice(), cfg.pump, cfg.grid());
  write_jsa(dir, f, "jsa", {{"note", "roundtrip"}});
  for (const char* name : {"jsa_re.csv", "jsa_im.csv", "jsa_jsi.csv", "jsa_axes.csv", "jsa.json"})
    CHECK(fs::exists(dir / name));
  const json side = read_json(dir / "jsa.json");
  CHECK(side.at("format") == "lpdc-jsa");
  const JointAmplitude g = read_jsa(dir / "jsa.json");
  CHECK(g.grid.signal_points == f.grid.signal_points);
  CHECK(g.grid.omega0 == doctest::Approx(f.grid.omega0).epsilon(1e-12));
  CHECK((g.values - f.values).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(code_of([&] { read_jsa(dir / "absent.json"); }) == ErrorCode::io);
}

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("preset catalog") {
  const PresetCatalog cat = PresetCatalog::builtin();
  const auto names = cat.names();
  for (const char* n : {"fig2", "fig4a", "fig4b", "fig4c", "fig4d", "calcite10", "calcite2"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(code_of([&] { (void)cat.get("fig9"); }) == ErrorCode::unknown_preset);
  CHECK(code_of([&] { (void)tolerance_preset("fig2", db()); }) == ErrorCode::unknown_preset);
  const TolerancePreset p = tolerance_preset("calcite10", db());
  CHECK(p.spec.crystals == 10);
  CHECK(p.spec.target == DesignTarget::gvm);
}

TEST_CASE("hom figure writes its files") {
  const fs::path dir = scratch("fig4a");
  const FigureResult r = run_figure("fig4a", dir, db(), {256, std::nullopt});
  for (const auto& f : r.files) CHECK(fs::exists(dir / f));
  CHECK(r.summary.contains("visibility"));
}
