#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpdc/jsa.hpp"

namespace lpdc {

enum class DesignTarget {
  symmetric,    // tau_- = 0
  gvm,          // tau_+ = 0
  orientation,  // atan2(-tau_+, tau_-) = target angle
};

std::string to_string(DesignTarget target);
DesignTarget parse_design_target(const std::string& text);  // "tau-minus", "tau-plus", "angle"

struct DesignSpec {
  DesignSpec(Material crystal_material, double crystal_length_um, Material spacer_material)
      : crystal(std::move(crystal_material)), crystal_length(crystal_length_um), spacer(std::move(spacer_material)) {}

  Material crystal;
  double crystal_length = 0.0;  // um
  Material spacer;
  int crystals = 2;
  DesignTarget target = DesignTarget::symmetric;
  double orientation = 0.0;  // rad, used with DesignTarget::orientation
  bool axis_flip = false;
  PumpSpec pump;
  Photon extraordinary_photon = Photon::signal;

  PhasematchConfig config() const;
  double cut_angle() const;  // solved for the pump
};

struct SpacerSolution {
  double length = 0.0;  // um
  double ratio = 0.0;   // h / L
  TauCoefficients achieved;
  double cut_angle = 0.0;  // rad
};

/// Exact solution of the linear group-delay constraint for the spacer length.
/// Throws Error{same_sign_walkoff} when the target needs h <= 0.
SpacerSolution solve_spacer_length(const DesignSpec& spec);

/// C S C ... C with `spec.crystals` crystals. `spacer_phase_offset` is added to
/// every spacer.
Superlattice build_superlattice(const DesignSpec& spec, double spacer_length, double spacer_phase_offset = 0.0);

struct PairCandidate {
  std::string spacer;
  bool feasible = false;
  double ratio = 0.0;           // h / L when feasible
  double spacer_mismatch = 0.0; // |dkappa0|, rad/um
  std::string note;
};

/// One row per candidate; feasible rows first by ascending h/L, then the rest
/// in input order.
std::vector<PairCandidate> material_pair_scan(const DesignSpec& base, const std::vector<Material>& candidates);

enum class ToleranceMetric { fidelity, symmetry_residual, schmidt_number, correlation_angle };

std::string to_string(ToleranceMetric metric);

struct ToleranceOptions {
  double min_error = 1e-3;
  double max_error = 1e-1;
  int errors_per_side = 21;
  std::size_t grid_points = 256;
  // Trim every spacer's constant phase so the centre-frequency phase per
  // period stays at its design value.
  bool hold_constant_phase = true;

  double fidelity_threshold = 0.95;         // |<f, f0>|^2 >= threshold
  double residual_increase = 0.05;          // residual - residual0 <= this
  double schmidt_deviation = 0.05;          // |K - K0| / K0 <= this
  double angle_deviation = 1.0;             // degrees
};

struct ToleranceRow {
  double error = 0.0;  // fractional spacer-length error
  double fidelity = 1.0;
  double symmetry_residual = 0.0;
  double schmidt_number = 1.0;
  double correlation_angle = 0.0;  // degrees
};

struct MetricTolerance {
  ToleranceMetric metric = ToleranceMetric::fidelity;
  double threshold = 0.0;
  // Largest |error| such that every grid point with smaller or equal |error|
  // passes; 0 when the smallest perturbation already fails.
  double tolerance = 0.0;
  bool monotone = true;  // degradation non-decreasing away from zero on both sides
};

struct ToleranceReport {
  DesignSpec spec;
  SpacerSolution design;
  FrequencyGrid grid;
  ToleranceOptions options;
  std::vector<ToleranceRow> rows;  // sorted by error, includes 0
  std::vector<MetricTolerance> tolerances;  // fidelity, residual, Schmidt, angle

  const MetricTolerance& tolerance(ToleranceMetric metric) const;
};

ToleranceReport tolerance_sweep(const DesignSpec& spec, const ToleranceOptions& options = {});

/// |<f, g>|^2 on a shared grid for normalised amplitudes.
double fidelity(const JointAmplitude& f, const JointAmplitude& g);

/// Principal-axis angle of |f|^2 in the (nu_s, nu_i) plane, degrees in
/// (-90, 90]; 45 means positive correlation, -45 anticorrelation.
double correlation_angle(const JointAmplitude& f);

}  // namespace lpdc
