#include "lpdc/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::unknown_material: return "UnknownMaterial";
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::no_root_in_bracket: return "NoRootInBracket";
    case ErrorCode::non_periodic_stack: return "NonPeriodicStack";
    case ErrorCode::birth_outside_crystal: return "BirthOutsideCrystal";
    case ErrorCode::non_square_grid: return "NonSquareGrid";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::decomposition_failure: return "DecompositionFailure";
    case ErrorCode::dip_not_resolved: return "DipNotResolved";
    case ErrorCode::same_sign_walkoff: return "SameSignWalkoff";
    case ErrorCode::unknown_preset: return "UnknownPreset";
    case ErrorCode::io: return "IoError";
  }
  return "Error";
}

double SellmeierTerms::index_squared(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  double n2 = constant;
  for (const auto& [b, c] : resonances) n2 += b * l2 / (l2 - c);
  for (const auto& [d, e] : poles) n2 += d / (l2 - e);
  double lp = l2;
  for (double f : powers) {
    n2 += f * lp;
    lp *= l2;
  }
  return n2;
}

double SellmeierTerms::index_squared_slope(double lambda_um) const {
  const double l = lambda_um;
  const double l2 = l * l;
  double slope = 0.0;
  // d/dl [B l^2/(l^2-C)] = -2 B C l/(l^2-C)^2
  for (const auto& [b, c] : resonances) {
    const double den = l2 - c;
    slope += -2.0 * b * c * l / (den * den);
  }
  for (const auto& [d, e] : poles) {
    const double den = l2 - e;
    slope += -2.0 * d * l / (den * den);
  }
  // d/dl [F_j l^(2j)] = 2j F_j l^(2j-1)
  double lp = l;
  int j = 1;
  for (double f : powers) {
    slope += 2.0 * j * f * lp;
    lp *= l2;
    ++j;
  }
  return slope;
}

Material::Material(std::string name, SellmeierTerms ordinary, SellmeierTerms extraordinary,
                   WavelengthRange valid_range, std::string source)
    : name_(std::move(name)),
      ordinary_(std::move(ordinary)),
      extraordinary_(std::move(extraordinary)),
      valid_range_(valid_range),
      source_(std::move(source)) {
  if (!(valid_range_.min_um > 0.0) || !(valid_range_.max_um > valid_range_.min_um)) {
    throw Error(ErrorCode::invalid_input, "material '" + name_ + "' has an empty wavelength range");
  }
}

void Material::require_in_range(double lambda_um) const {
  if (!std::isfinite(lambda_um) || !valid_range_.contains(lambda_um)) {
    std::ostringstream msg;
    msg << "wavelength " << um_to_nm(lambda_um) << " nm outside valid range ["
        << um_to_nm(valid_range_.min_um) << ", " << um_to_nm(valid_range_.max_um) << "] nm of "
        << name_;
    throw Error(ErrorCode::out_of_range, msg.str());
  }
}

Polarization Polarization::extraordinary(double angle) {
  if (!(angle >= 0.0 && angle <= kPi / 2.0)) {
    throw Error(ErrorCode::invalid_input, "propagation angle must lie in [0, pi/2]");
  }
  return Polarization(false, angle);
}

namespace {

struct IndexAndSlope {
  double n;
  double dn_dl;
};

IndexAndSlope evaluate(const Material& m, const Polarization& role, double lambda_um) {
  m.require_in_range(lambda_um);
  const double no2 = m.ordinary().index_squared(lambda_um);
  const double dno2 = m.ordinary().index_squared_slope(lambda_um);
  if (role.is_ordinary()) {
    const double n = std::sqrt(no2);
    return {n, dno2 / (2.0 * n)};
  }
  const double ne2 = m.extraordinary().index_squared(lambda_um);
  const double dne2 = m.extraordinary().index_squared_slope(lambda_um);
  const double c = std::cos(role.angle());
  const double s = std::sin(role.angle());
  // 1/n^2 = cos^2/no^2 + sin^2/ne^2
  const double inv = c * c / no2 + s * s / ne2;
  const double dinv = -c * c * dno2 / (no2 * no2) - s * s * dne2 / (ne2 * ne2);
  const double n = 1.0 / std::sqrt(inv);
  return {n, -0.5 * n * n * n * dinv};
}

}  // namespace

double refractive_index(const Material& material, const Polarization& role, double lambda_um) {
  return evaluate(material, role, lambda_um).n;
}

double refractive_index_slope(const Material& material, const Polarization& role, double lambda_um) {
  return evaluate(material, role, lambda_um).dn_dl;
}

double wavevector(const Material& material, const Polarization& role, double omega) {
  const double n = refractive_index(material, role, omega_to_wavelength(omega));
  return n * omega / kSpeedOfLight;
}

double reciprocal_group_velocity(const Material& material, const Polarization& role, double omega) {
  const double lambda = omega_to_wavelength(omega);
  const auto [n, dn_dl] = evaluate(material, role, lambda);
  // dk/dw = (n + w dn/dw)/c = (n - l dn/dl)/c
  return (n - lambda * dn_dl) / kSpeedOfLight;
}

double type2_mismatch(const Material& crystal, double angle, double omega0) {
  const auto e = Polarization::extraordinary(angle);
  return wavevector(crystal, e, 2.0 * omega0) - wavevector(crystal, e, omega0) -
         wavevector(crystal, Polarization::ordinary(), omega0);
}

double phasematch_angle(const Material& crystal, double pump_wavelength_um, double tolerance) {
  const double omega0 = wavelength_to_omega(pump_wavelength_um) / 2.0;
  double lo = 0.0;
  double hi = kPi / 2.0;
  double f_lo = type2_mismatch(crystal, lo, omega0);
  const double f_hi = type2_mismatch(crystal, hi, omega0);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw Error(ErrorCode::no_root_in_bracket,
                crystal.name() + " cannot phasematch degenerate collinear type-II at pump " +
                    std::to_string(um_to_nm(pump_wavelength_um)) + " nm");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = type2_mismatch(crystal, mid, omega0);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lpdc
