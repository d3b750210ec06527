#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "lpdc/superlattice.hpp"

namespace lpdc {

/// Gaussian pump. `sigma` is the amplitude width of the envelope
/// exp(-2 nu_+^2 / sigma^2), nu_+ = (nu_s + nu_i)/sqrt(2).
struct PumpSpec {
  double center_wavelength_nm = 0.0;
  double fwhm_nm = 0.0;  // intensity FWHM as given
  double sigma = 0.0;    // rad/fs

  static PumpSpec from_fwhm(double center_wavelength_nm, double fwhm_nm);

  double center_omega() const;                         // rad/fs
  double pdc_center_omega() const { return center_omega() / 2.0; }
  double center_wavelength_um() const { return center_wavelength_nm * 1e-3; }
};

/// Intensity FWHM in wavelength -> envelope width sigma.
///
/// FWHM_w = (2 pi c / l^2) FWHM_l. The intensity |alpha|^2 = exp(-2 W^2/sigma^2)
/// in the pump detuning W = nu_s + nu_i has FWHM sigma sqrt(2 ln 2), hence
/// sigma = FWHM_w / sqrt(2 ln 2). This is the only place the convention lives.
double fwhm_to_sigma(double center_wavelength_nm, double fwhm_nm);
double sigma_to_fwhm(double center_wavelength_nm, double sigma);

double pump_envelope(const PumpSpec& pump, double nu_plus);

/// Uniform detuning grid centred on omega0; rows are signal, columns idler.
struct FrequencyGrid {
  double omega0 = 0.0;
  double signal_half_width = 0.0;  // rad/fs
  double idler_half_width = 0.0;
  std::size_t signal_points = 0;
  std::size_t idler_points = 0;

  static constexpr std::size_t kMinPoints = 64;

  static FrequencyGrid square(double omega0, double half_width, std::size_t points);

  bool is_square() const;
  double signal_step() const;
  double idler_step() const;
  double signal_detuning(std::size_t row) const;
  double idler_detuning(std::size_t col) const;
  std::vector<double> signal_axis() const;
  std::vector<double> idler_axis() const;
  void validate() const;
};

struct JointAmplitude {
  FrequencyGrid grid;
  Eigen::MatrixXcd values;  // f(nu_s[row], nu_i[col])
  bool normalized = false;

  double cell_area() const { return grid.signal_step() * grid.idler_step(); }
  // sum |f|^2 dnu_s dnu_i
  double norm_squared() const;
  void normalize();
  // Throws Error{not_normalized} unless flagged and within 1e-9 of unit norm.
  void require_normalized() const;
};

enum class JsaMode {
  full,            // Dirichlet factor x single-crystal sinc x pump
  dirichlet_only,  // Dirichlet factor x pump
};

JointAmplitude synthesize_jsa(const Superlattice& stack, const PumpSpec& pump, const FrequencyGrid& grid,
                              JsaMode mode = JsaMode::full, bool normalize = true);

/// ||f - f^T|| / ||f|| with the transpose swapping signal and idler.
double symmetry_residual(const JointAmplitude& jsa);

/// Largest detuning half-width keeping signal, idler and pump inside every
/// segment's Sellmeier range (with a 1% margin).
double max_half_width(const Superlattice& stack);

/// Square grid covering 4 sigma of pump detuning along nu_+ plus five lobes
/// of the coarsest nu_- structure (2 pi/|tau_-| of the stack or of a single
/// crystal), clipped to max_half_width().
FrequencyGrid default_grid(const Superlattice& stack, const PumpSpec& pump, std::size_t points = 512);

}  // namespace lpdc
