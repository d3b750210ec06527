#include "lpdc/design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpdc/entanglement.hpp"
#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

constexpr double kTauTolerance = 1e-6;  // fs

double target_value(const TauCoefficients& t, const DesignSpec& spec) {
  switch (spec.target) {
    case DesignTarget::symmetric:
      return t.minus;
    case DesignTarget::gvm:
      return t.plus;
    case DesignTarget::orientation:
      return -t.plus * std::cos(spec.orientation) - t.minus * std::sin(spec.orientation);
  }
  return 0.0;
}

std::vector<double> error_grid(const ToleranceOptions& o) {
  if (!(o.min_error > 0.0) || !(o.max_error > o.min_error) || o.errors_per_side < 2) {
    throw Error(ErrorCode::invalid_input, "tolerance grid needs 0 < min_error < max_error and >= 2 points per side");
  }
  std::vector<double> side(static_cast<std::size_t>(o.errors_per_side));
  const double lo = std::log10(o.min_error);
  const double hi = std::log10(o.max_error);
  for (int k = 0; k < o.errors_per_side; ++k) {
    side[static_cast<std::size_t>(k)] = std::pow(10.0, lo + (hi - lo) * k / (o.errors_per_side - 1));
  }
  std::vector<double> out;
  for (auto it = side.rbegin(); it != side.rend(); ++it) out.push_back(-*it);
  out.push_back(0.0);
  out.insert(out.end(), side.begin(), side.end());
  return out;
}

// Positive when worse than the design.
double degradation(ToleranceMetric m, const ToleranceRow& row, const ToleranceRow& ref) {
  switch (m) {
    case ToleranceMetric::fidelity:
      return 1.0 - row.fidelity;
    case ToleranceMetric::symmetry_residual:
      return row.symmetry_residual - ref.symmetry_residual;
    case ToleranceMetric::schmidt_number:
      return std::abs(row.schmidt_number - ref.schmidt_number) / ref.schmidt_number;
    case ToleranceMetric::correlation_angle: {
      double d = std::abs(row.correlation_angle - ref.correlation_angle);
      return std::min(d, 180.0 - d);
    }
  }
  return 0.0;
}

double limit_for(ToleranceMetric m, const ToleranceOptions& o) {
  switch (m) {
    case ToleranceMetric::fidelity:
      return 1.0 - o.fidelity_threshold;
    case ToleranceMetric::symmetry_residual:
      return o.residual_increase;
    case ToleranceMetric::schmidt_number:
      return o.schmidt_deviation;
    case ToleranceMetric::correlation_angle:
      return o.angle_deviation;
  }
  return 0.0;
}

double threshold_for(ToleranceMetric m, const ToleranceOptions& o) {
  return m == ToleranceMetric::fidelity ? o.fidelity_threshold : limit_for(m, o);
}

}  // namespace

std::string to_string(DesignTarget target) {
  switch (target) {
    case DesignTarget::symmetric:
      return "tau-minus";
    case DesignTarget::gvm:
      return "tau-plus";
    case DesignTarget::orientation:
      return "angle";
  }
  return "unknown";
}

DesignTarget parse_design_target(const std::string& text) {
  if (text == "tau-minus" || text == "symmetric") return DesignTarget::symmetric;
  if (text == "tau-plus" || text == "gvm") return DesignTarget::gvm;
  if (text == "angle" || text == "orientation") return DesignTarget::orientation;
  throw Error(ErrorCode::invalid_input, "unknown design target '" + text + "' (expected tau-minus, tau-plus or angle)");
}

std::string to_string(ToleranceMetric metric) {
  switch (metric) {
    case ToleranceMetric::fidelity:
      return "fidelity";
    case ToleranceMetric::symmetry_residual:
      return "symmetry_residual";
    case ToleranceMetric::schmidt_number:
      return "schmidt_number";
    case ToleranceMetric::correlation_angle:
      return "correlation_angle";
  }
  return "unknown";
}

PhasematchConfig DesignSpec::config() const {
  return PhasematchConfig::degenerate(pump.center_wavelength_um(), extraordinary_photon);
}

double DesignSpec::cut_angle() const { return phasematch_angle(crystal, pump.center_wavelength_um()); }

SpacerSolution solve_spacer_length(const DesignSpec& spec) {
  if (!(spec.crystal_length > 0.0)) throw Error(ErrorCode::invalid_input, "crystal length must be positive");
  if (spec.crystals < 1) throw Error(ErrorCode::invalid_input, "need at least one crystal");
  const PhasematchConfig cfg = spec.config();
  const double lambda0 = omega_to_wavelength(cfg.omega0);
  spec.spacer.require_in_range(lambda0);
  spec.spacer.require_in_range(lambda0 / 2.0);

  const double angle = spec.cut_angle();
  const TauCoefficients a = segment_tau(Segment::crystal(spec.crystal, spec.crystal_length, angle), cfg);
  const TauCoefficients b = segment_tau(Segment::spacer(spec.spacer, 1.0, spec.axis_flip), cfg);
  const double num = target_value(a, spec);
  const double slope = target_value(b, spec);

  const double h = slope != 0.0 ? -num / slope : 0.0;
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream msg;
    msg << spec.crystal.name() << " and " << spec.spacer.name() << " walkoffs have the same sign for target "
        << to_string(spec.target) << " (crystal " << num << " fs, spacer " << slope * 1e3 << " fs/mm)";
    throw Error(ErrorCode::same_sign_walkoff, msg.str());
  }

  SpacerSolution out;
  out.length = h;
  out.ratio = h / spec.crystal_length;
  out.cut_angle = angle;
  out.achieved = {a.plus + h * b.plus, a.minus + h * b.minus};
  if (spec.target == DesignTarget::orientation) {
    // The linear constraint also admits the antipodal direction.
    const double got = std::atan2(-out.achieved.plus, out.achieved.minus);
    if (std::cos(got - spec.orientation) < 0.0) {
      throw Error(ErrorCode::same_sign_walkoff, "orientation only reachable with a negative spacer length");
    }
  }
  if (std::abs(target_value(out.achieved, spec)) >= kTauTolerance) {
    throw Error(ErrorCode::invalid_input, "spacer solution does not meet the target to 1e-6 fs");
  }
  return out;
}

Superlattice build_superlattice(const DesignSpec& spec, double spacer_length, double spacer_phase_offset) {
  const double angle = spec.cut_angle();
  std::vector<Segment> segments;
  for (int j = 0; j < spec.crystals; ++j) {
    if (j > 0) {
      Segment s = Segment::spacer(spec.spacer, spacer_length, spec.axis_flip);
      s.phase_offset = spacer_phase_offset;
      segments.push_back(std::move(s));
    }
    segments.push_back(Segment::crystal(spec.crystal, spec.crystal_length, angle));
  }
  return Superlattice(std::move(segments), spec.config());
}

std::vector<PairCandidate> material_pair_scan(const DesignSpec& base, const std::vector<Material>& candidates) {
  std::vector<PairCandidate> feasible;
  std::vector<PairCandidate> rest;
  const PhasematchConfig cfg = base.config();
  for (const Material& m : candidates) {
    PairCandidate row;
    row.spacer = m.name();
    DesignSpec spec = base;
    spec.spacer = m;
    try {
      const SpacerSolution sol = solve_spacer_length(spec);
      row.feasible = true;
      row.ratio = sol.ratio;
    } catch (const Error& e) {
      row.note = e.what();
    }
    try {
      row.spacer_mismatch = std::abs(phase_mismatch(Segment::spacer(m, 1.0, base.axis_flip), cfg, 0.0, 0.0));
    } catch (const Error&) {
      row.spacer_mismatch = 0.0;
    }
    (row.feasible ? feasible : rest).push_back(std::move(row));
  }
  std::stable_sort(feasible.begin(), feasible.end(),
                   [](const PairCandidate& x, const PairCandidate& y) { return x.ratio < y.ratio; });
  feasible.insert(feasible.end(), rest.begin(), rest.end());
  return feasible;
}

double fidelity(const JointAmplitude& f, const JointAmplitude& g) {
  if (f.values.rows() != g.values.rows() || f.values.cols() != g.values.cols()) {
    throw Error(ErrorCode::invalid_input, "fidelity needs amplitudes on the same grid");
  }
  f.require_normalized();
  g.require_normalized();
  const std::complex<double> overlap = (f.values.conjugate().cwiseProduct(g.values)).sum() * f.cell_area();
  return std::norm(overlap);
}

double correlation_angle(const JointAmplitude& f) {
  const Eigen::MatrixXd p = f.values.cwiseAbs2();
  const double total = p.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::not_normalized, "joint amplitude vanishes on the grid");
  const auto s = f.grid.signal_axis();
  const auto i = f.grid.idler_axis();
  double ms = 0.0, mi = 0.0;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      ms += p(r, c) * s[static_cast<std::size_t>(r)];
      mi += p(r, c) * i[static_cast<std::size_t>(c)];
    }
  }
  ms /= total;
  mi /= total;
  double css = 0.0, cii = 0.0, csi = 0.0;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    const double ds = s[static_cast<std::size_t>(r)] - ms;
    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      const double di = i[static_cast<std::size_t>(c)] - mi;
      css += p(r, c) * ds * ds;
      cii += p(r, c) * di * di;
      csi += p(r, c) * ds * di;
    }
  }
  return rad_to_deg(0.5 * std::atan2(2.0 * csi, css - cii));
}

const MetricTolerance& ToleranceReport::tolerance(ToleranceMetric metric) const {
  for (const auto& t : tolerances) {
    if (t.metric == metric) return t;
  }
  throw Error(ErrorCode::invalid_input, "metric missing from report");
}

ToleranceReport tolerance_sweep(const DesignSpec& spec, const ToleranceOptions& options) {
  const std::vector<double> errors = error_grid(options);
  const SpacerSolution design = solve_spacer_length(spec);
  const Superlattice reference_stack = build_superlattice(spec, design.length);
  const FrequencyGrid grid = default_grid(reference_stack, spec.pump, options.grid_points);
  const double spacer_dk0 = reference_stack.crystal_count() > 1 ? reference_stack.spacer_mismatch(0.0, 0.0) : 0.0;

  const JointAmplitude reference = synthesize_jsa(reference_stack, spec.pump, grid);

  std::vector<ToleranceRow> rows(errors.size());
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const double e = errors[k];
    const double offset = options.hold_constant_phase ? -e * design.length * spacer_dk0 : 0.0;
    const Superlattice stack = build_superlattice(spec, design.length * (1.0 + e), offset);
    const JointAmplitude f = synthesize_jsa(stack, spec.pump, grid);
    ToleranceRow& row = rows[k];
    row.error = e;
    row.fidelity = fidelity(reference, f);
    row.symmetry_residual = symmetry_residual(f);
    row.schmidt_number = schmidt_decompose(f).schmidt_number;
    row.correlation_angle = correlation_angle(f);
  }

  const std::size_t centre = errors.size() / 2;
  const ToleranceRow& ref = rows[centre];
  ToleranceReport report{spec, design, grid, options, rows, {}};
  for (ToleranceMetric m : {ToleranceMetric::fidelity, ToleranceMetric::symmetry_residual,
                            ToleranceMetric::schmidt_number, ToleranceMetric::correlation_angle}) {
    MetricTolerance t;
    t.metric = m;
    t.threshold = threshold_for(m, options);
    const double limit = limit_for(m, options);
    // Walk outwards on both sides together.
    for (std::size_t step = 1; step <= centre; ++step) {
      const bool ok = degradation(m, rows[centre - step], ref) <= limit &&
                      degradation(m, rows[centre + step], ref) <= limit;
      if (!ok) break;
      t.tolerance = std::abs(rows[centre + step].error);
    }
    constexpr double slack = 1e-9;
    for (std::size_t step = 1; step <= centre; ++step) {
      if (degradation(m, rows[centre + step], ref) + slack < degradation(m, rows[centre + step - 1], ref) ||
          degradation(m, rows[centre - step], ref) + slack < degradation(m, rows[centre - step + 1], ref)) {
        t.monotone = false;
      }
    }
    report.tolerances.push_back(t);
  }
  return report;
}

}  // namespace lpdc
