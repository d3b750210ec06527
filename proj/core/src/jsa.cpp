#include "lpdc/jsa.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>

#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {

double fwhm_to_sigma(double center_wavelength_nm, double fwhm_nm) {
  const double lambda = nm_to_um(center_wavelength_nm);
  const double fwhm_omega = kTwoPi * kSpeedOfLight / (lambda * lambda) * nm_to_um(fwhm_nm);
  return fwhm_omega / std::sqrt(2.0 * std::numbers::ln2);
}

double sigma_to_fwhm(double center_wavelength_nm, double sigma) {
  const double lambda = nm_to_um(center_wavelength_nm);
  const double fwhm_omega = sigma * std::sqrt(2.0 * std::numbers::ln2);
  return um_to_nm(fwhm_omega * lambda * lambda / (kTwoPi * kSpeedOfLight));
}

PumpSpec PumpSpec::from_fwhm(double center_wavelength_nm, double fwhm_nm) {
  if (!(center_wavelength_nm > 0.0) || !(fwhm_nm > 0.0)) {
    throw Error(ErrorCode::invalid_input, "pump wavelength and bandwidth must be positive");
  }
  return PumpSpec{center_wavelength_nm, fwhm_nm, fwhm_to_sigma(center_wavelength_nm, fwhm_nm)};
}

double PumpSpec::center_omega() const { return wavelength_to_omega(nm_to_um(center_wavelength_nm)); }

double pump_envelope(const PumpSpec& pump, double nu_plus) {
  const double x = nu_plus / pump.sigma;
  return std::exp(-2.0 * x * x);
}

FrequencyGrid FrequencyGrid::square(double omega0, double half_width, std::size_t points) {
  FrequencyGrid g{omega0, half_width, half_width, points, points};
  g.validate();
  return g;
}

bool FrequencyGrid::is_square() const {
  return signal_points == idler_points && signal_half_width == idler_half_width;
}

double FrequencyGrid::signal_step() const {
  return 2.0 * signal_half_width / static_cast<double>(signal_points - 1);
}

double FrequencyGrid::idler_step() const {
  return 2.0 * idler_half_width / static_cast<double>(idler_points - 1);
}

double FrequencyGrid::signal_detuning(std::size_t row) const {
  return -signal_half_width + signal_step() * static_cast<double>(row);
}

double FrequencyGrid::idler_detuning(std::size_t col) const {
  return -idler_half_width + idler_step() * static_cast<double>(col);
}

std::vector<double> FrequencyGrid::signal_axis() const {
  std::vector<double> axis(signal_points);
  for (std::size_t r = 0; r < signal_points; ++r) axis[r] = signal_detuning(r);
  return axis;
}

std::vector<double> FrequencyGrid::idler_axis() const {
  std::vector<double> axis(idler_points);
  for (std::size_t c = 0; c < idler_points; ++c) axis[c] = idler_detuning(c);
  return axis;
}

void FrequencyGrid::validate() const {
  if (!(omega0 > 0.0)) throw Error(ErrorCode::invalid_input, "grid centre must be positive");
  if (!(signal_half_width > 0.0) || !(idler_half_width > 0.0)) {
    throw Error(ErrorCode::invalid_input, "grid half-widths must be positive");
  }
  if (signal_points < kMinPoints || idler_points < kMinPoints) {
    throw Error(ErrorCode::invalid_input, "grids need at least 64 points per axis");
  }
}

double JointAmplitude::norm_squared() const { return values.squaredNorm() * cell_area(); }

void JointAmplitude::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw Error(ErrorCode::not_normalized, "joint amplitude vanishes on the grid");
  }
  values /= std::sqrt(n2);
  normalized = true;
}

void JointAmplitude::require_normalized() const {
  if (!normalized || std::abs(norm_squared() - 1.0) > 1e-9) {
    throw Error(ErrorCode::not_normalized, "joint amplitude must be normalised to unit probability");
  }
}

double max_half_width(const Superlattice& stack) {
  const double w0 = stack.config().omega0;
  double limit = std::numeric_limits<double>::infinity();
  for (const Segment& seg : stack.segments()) {
    const auto& r = seg.material.valid_range();
    const double w_hi = wavelength_to_omega(r.min_um);
    const double w_lo = wavelength_to_omega(r.max_um);
    limit = std::min({limit, w_hi - w0, w0 - w_lo, 0.5 * (w_hi - 2.0 * w0), 0.5 * (2.0 * w0 - w_lo)});
  }
  return 0.99 * limit;
}

FrequencyGrid default_grid(const Superlattice& stack, const PumpSpec& pump, std::size_t points) {
  const Segment* crystal = nullptr;
  for (const auto& s : stack.segments()) {
    if (s.kind == SegmentKind::nonlinear) {
      crystal = &s;
      break;
    }
  }
  const double crystal_minus = std::abs(segment_tau(*crystal, stack.config()).minus);
  double span_minus = crystal_minus > 0.0 ? 2.0 * kTwoPi / crystal_minus : 0.0;
  if (stack.is_periodic()) {
    const double stack_minus = std::abs(stack.tau().minus);
    if (stack_minus > 0.0) span_minus = std::max(span_minus, 5.0 * kTwoPi / stack_minus);
  }
  if (span_minus == 0.0) span_minus = 8.0 * pump.sigma;
  const double span_plus = 4.0 * pump.sigma;
  const double half_width = std::min((span_plus + span_minus) / std::numbers::sqrt2, max_half_width(stack));
  return FrequencyGrid::square(stack.config().omega0, half_width, points);
}

JointAmplitude synthesize_jsa(const Superlattice& stack, const PumpSpec& pump, const FrequencyGrid& grid,
                              JsaMode mode, bool normalize) {
  grid.validate();
  const double w0 = stack.config().omega0;
  if (std::abs(pump.pdc_center_omega() - w0) > 1e-9 * w0) {
    throw Error(ErrorCode::invalid_input, "pump centre is not twice the stack's degenerate frequency");
  }
  if (std::abs(grid.omega0 - w0) > 1e-9 * w0) {
    throw Error(ErrorCode::invalid_input, "grid centre differs from the stack's degenerate frequency");
  }
  const double limit = max_half_width(stack) / 0.99;
  if (grid.signal_half_width > limit || grid.idler_half_width > limit) {
    std::ostringstream msg;
    msg << "grid half-width exceeds the dispersion data coverage (max " << limit << " rad/fs)";
    throw Error(ErrorCode::out_of_range, msg.str());
  }
  if (mode == JsaMode::dirichlet_only && !stack.is_periodic()) {
    throw Error(ErrorCode::non_periodic_stack, "dirichlet-only synthesis needs a periodic stack");
  }

  JointAmplitude jsa{grid, Eigen::MatrixXcd(grid.signal_points, grid.idler_points), false};
  const auto rows = static_cast<long>(grid.signal_points);
  const auto cols = static_cast<long>(grid.idler_points);
  std::exception_ptr failure;
  std::mutex failure_mutex;

#pragma omp parallel for schedule(static)
  for (long r = 0; r < rows; ++r) {
    try {
      const double ns = grid.signal_detuning(static_cast<std::size_t>(r));
      for (long c = 0; c < cols; ++c) {
        const double ni = grid.idler_detuning(static_cast<std::size_t>(c));
        const std::complex<double> phase_part =
            mode == JsaMode::full ? stack.pmf(ns, ni) : stack.superlattice_factor(ns, ni);
        jsa.values(r, c) = phase_part * pump_envelope(pump, (ns + ni) / std::numbers::sqrt2);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (normalize) jsa.normalize();
  return jsa;
}

double symmetry_residual(const JointAmplitude& jsa) {
  if (!jsa.grid.is_square()) {
    throw Error(ErrorCode::non_square_grid, "symmetry residual needs identical signal and idler axes");
  }
  const double norm = jsa.values.norm();
  if (norm == 0.0) return 0.0;
  return (jsa.values - jsa.values.transpose()).norm() / norm;
}

}  // namespace lpdc
