#include "lpdc/output.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lpdc/error.hpp"
#include "lpdc/stack_io.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

void write_meta(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << ": " << v << '\n';
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", value);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m, const Metadata& meta) {
  auto out = open_out(path);
  write_meta(out, meta);
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) line += ',';
      line += format_number(m(r, c));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      // strtod rather than stod: subnormals set ERANGE but parse fine.
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end && std::isspace(static_cast<unsigned char>(*end))) ++end;
      if (end == cell.c_str() || !end || *end != '\0') {
        throw Error(ErrorCode::invalid_input, path.string() + ": not a number: '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::invalid_input, path.string() + ": ragged matrix");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::invalid_input, path.string() + ": empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& columns, const Metadata& meta) {
  if (names.size() != columns.size()) throw Error(ErrorCode::invalid_input, "column names and data differ in count");
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw Error(ErrorCode::invalid_input, "columns differ in length");
  }
  auto out = open_out(path);
  write_meta(out, meta);
  for (std::size_t k = 0; k < names.size(); ++k) out << (k ? "," : "") << names[k];
  out << '\n';
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << format_number(columns[k][r]);
    out << '\n';
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, path.string() + ": " + e.what());
  }
}

json to_json(const FrequencyGrid& g) {
  return {{"omega0_rad_per_fs", g.omega0},
          {"signal_half_width_rad_per_fs", g.signal_half_width},
          {"idler_half_width_rad_per_fs", g.idler_half_width},
          {"signal_points", g.signal_points},
          {"idler_points", g.idler_points}};
}

void write_jsa(const std::filesystem::path& dir, const JointAmplitude& jsa, const std::string& prefix,
               const json& extra) {
  const Metadata meta{{"rows", "signal detuning"}, {"columns", "idler detuning"}};
  const std::string re = prefix + "_re.csv";
  const std::string im = prefix + "_im.csv";
  const std::string jsi = prefix + "_jsi.csv";
  const std::string axes = prefix + "_axes.csv";
  write_matrix_csv(dir / re, jsa.values.real(), meta);
  write_matrix_csv(dir / im, jsa.values.imag(), meta);
  write_matrix_csv(dir / jsi, jsa.values.cwiseAbs2(), meta);

  const auto s = jsa.grid.signal_axis();
  const auto i = jsa.grid.idler_axis();
  const std::size_t n = std::max(s.size(), i.size());
  std::vector<double> index(n), sig(n, 0.0), idl(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    index[k] = static_cast<double>(k);
    if (k < s.size()) sig[k] = s[k];
    if (k < i.size()) idl[k] = i[k];
  }
  write_columns_csv(dir / axes, {"index", "signal_detuning_rad_per_fs", "idler_detuning_rad_per_fs"},
                    {index, sig, idl});

  json side{{"format", "lpdc-jsa"},
            {"version", 1},
            {"grid", to_json(jsa.grid)},
            {"normalized", jsa.normalized},
            {"norm_squared", jsa.norm_squared()},
            {"files", {{"real", re}, {"imag", im}, {"jsi", jsi}, {"axes", axes}}}};
  if (!extra.is_null()) side["context"] = extra;
  write_json(dir / (prefix + ".json"), side);
}

JointAmplitude read_jsa(const std::filesystem::path& sidecar) {
  const json side = read_json(sidecar);
  try {
    if (side.value("format", "") != "lpdc-jsa") {
      throw Error(ErrorCode::invalid_input, sidecar.string() + " is not an lpdc-jsa sidecar");
    }
    const json& g = side.at("grid");
    FrequencyGrid grid{g.at("omega0_rad_per_fs").get<double>(), g.at("signal_half_width_rad_per_fs").get<double>(),
                       g.at("idler_half_width_rad_per_fs").get<double>(), g.at("signal_points").get<std::size_t>(),
                       g.at("idler_points").get<std::size_t>()};
    grid.validate();
    const auto dir = sidecar.parent_path();
    const Eigen::MatrixXd re = read_matrix_csv(dir / side.at("files").at("real").get<std::string>());
    const Eigen::MatrixXd im = read_matrix_csv(dir / side.at("files").at("imag").get<std::string>());
    if (re.rows() != static_cast<Eigen::Index>(grid.signal_points) ||
        re.cols() != static_cast<Eigen::Index>(grid.idler_points) || im.rows() != re.rows() ||
        im.cols() != re.cols()) {
      throw Error(ErrorCode::invalid_input, "matrix shape does not match the grid in " + sidecar.string());
    }
    JointAmplitude jsa{grid, Eigen::MatrixXcd(re.rows(), re.cols()), false};
    jsa.values.real() = re;
    jsa.values.imag() = im;
    // Values were written with 13 significant digits; renormalise.
    jsa.normalize();
    return jsa;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, sidecar.string() + ": " + e.what());
  }
}

json to_json(const SchmidtResult& r) {
  json coeffs = json::array();
  for (double l : r.coefficients) {
    if (l < 1e-12) break;
    coeffs.push_back(l);
  }
  return {{"schmidt_number", r.schmidt_number},
          {"purity", r.purity},
          {"entropy_bits", r.entropy},
          {"coefficients", coeffs}};
}

json to_json(const HomSummary& s) {
  json minima = json::array();
  for (const auto& m : s.minima) minima.push_back({{"delay_fs", m.delay}, {"rate", m.rate}});
  json out{{"visibility", s.visibility}, {"multimodal", s.multimodal}, {"minima", minima}};
  out["width_fs"] = s.width ? json(*s.width) : json(nullptr);
  return out;
}

json to_json(const SpacerSolution& sol, const DesignSpec& spec) {
  json inputs{{"crystal", spec.crystal.name()},
              {"crystal_length_um", spec.crystal_length},
              {"spacer", spec.spacer.name()},
              {"crystals", spec.crystals},
              {"target", to_string(spec.target)},
              {"axis_flip", spec.axis_flip},
              {"pump_center_nm", spec.pump.center_wavelength_nm},
              {"pump_fwhm_nm", spec.pump.fwhm_nm}};
  if (spec.target == DesignTarget::orientation) inputs["orientation_deg"] = rad_to_deg(spec.orientation);
  return {{"inputs", inputs},
          {"cut_angle_deg", rad_to_deg(sol.cut_angle)},
          {"spacer_length_um", sol.length},
          {"spacer_length_mm", um_to_mm(sol.length)},
          {"ratio", sol.ratio},
          {"tau_plus_fs", sol.achieved.plus},
          {"tau_minus_fs", sol.achieved.minus}};
}

json to_json(const std::vector<PairCandidate>& scan) {
  json rows = json::array();
  for (const auto& c : scan) {
    json row{{"spacer", c.spacer}, {"feasible", c.feasible}, {"spacer_mismatch_rad_per_um", c.spacer_mismatch}};
    row["ratio"] = c.feasible ? json(c.ratio) : json(nullptr);
    if (!c.note.empty()) row["note"] = c.note;
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ToleranceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"error", row.error},
                    {"fidelity", row.fidelity},
                    {"symmetry_residual", row.symmetry_residual},
                    {"schmidt_number", row.schmidt_number},
                    {"correlation_angle_deg", row.correlation_angle}});
  }
  json tol = json::object();
  for (const auto& t : r.tolerances) {
    tol[to_string(t.metric)] = {{"threshold", t.threshold}, {"tolerance", t.tolerance}, {"monotone", t.monotone}};
  }
  return {{"design", to_json(r.design, r.spec)},
          {"grid", to_json(r.grid)},
          {"hold_constant_phase", r.options.hold_constant_phase},
          {"tolerances", tol},
          {"rows", rows}};
}

void write_hom_trace(const std::filesystem::path& csv, const HomTrace& trace) {
  write_columns_csv(csv, {"delay_fs", "normalized_rate"}, {trace.delays, trace.rates});
}

}  // namespace lpdc
