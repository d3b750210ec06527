#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lpdc {

/// Generalised Sellmeier expression in micrometres:
///
///   n^2(l) = constant + sum_k B_k l^2/(l^2 - C_k) + sum_k D_k/(l^2 - E_k) + sum_j F_j l^(2j)
///
/// which covers the Ghosh two-resonance form as well as the Kato/Eimerl
/// pole-plus-polynomial fits used for borates.
struct SellmeierTerms {
  double constant = 1.0;
  std::vector<std::pair<double, double>> resonances;  // (B, C)
  std::vector<std::pair<double, double>> poles;       // (D, E)
  std::vector<double> powers;                         // F_1, F_2, ...

  double index_squared(double lambda_um) const;
  // d(n^2)/d(lambda), per um.
  double index_squared_slope(double lambda_um) const;
};

struct WavelengthRange {
  double min_um = 0.0;
  double max_um = 0.0;

  bool contains(double lambda_um) const { return lambda_um >= min_um && lambda_um <= max_um; }
};

/// Uniaxial crystal with one Sellmeier set per principal axis.
class Material {
 public:
  Material(std::string name, SellmeierTerms ordinary, SellmeierTerms extraordinary,
           WavelengthRange valid_range, std::string source);

  const std::string& name() const { return name_; }
  const SellmeierTerms& ordinary() const { return ordinary_; }
  const SellmeierTerms& extraordinary() const { return extraordinary_; }
  const WavelengthRange& valid_range() const { return valid_range_; }
  const std::string& source() const { return source_; }

  // Throws Error{out_of_range} naming the valid interval.
  void require_in_range(double lambda_um) const;

 private:
  std::string name_;
  SellmeierTerms ordinary_;
  SellmeierTerms extraordinary_;
  WavelengthRange valid_range_;
  std::string source_;
};

/// Ordinary wave, or extraordinary wave travelling at `angle` to the optic axis.
class Polarization {
 public:
  static Polarization ordinary() { return Polarization(true, 0.0); }
  // angle in [0, pi/2]
  static Polarization extraordinary(double angle);

  bool is_ordinary() const { return ordinary_; }
  double angle() const { return angle_; }

  friend bool operator==(const Polarization&, const Polarization&) = default;

 private:
  Polarization(bool ordinary, double angle) : ordinary_(ordinary), angle_(angle) {}

  bool ordinary_;
  double angle_;
};

double refractive_index(const Material& material, const Polarization& role, double lambda_um);

// dn/d(lambda), per um.
double refractive_index_slope(const Material& material, const Polarization& role, double lambda_um);

// k = n(omega) omega / c in rad/um; omega in rad/fs.
double wavevector(const Material& material, const Polarization& role, double omega);

// dk/d(omega) in fs/um, from the differentiated Sellmeier form.
double reciprocal_group_velocity(const Material& material, const Polarization& role, double omega);

/// Degenerate collinear type-II mismatch k_p^e(2 w0) - k^e(w0) - k^o(w0) for
/// propagation at `angle` to the optic axis.
double type2_mismatch(const Material& crystal, double angle, double omega0);

/// Cut angle zeroing type2_mismatch for a pump at `pump_wavelength_um`, by
/// bisection over (0, pi/2). Throws Error{no_root_in_bracket} when the
/// material cannot phasematch this configuration.
double phasematch_angle(const Material& crystal, double pump_wavelength_um, double tolerance = 1e-12);

}  // namespace lpdc
