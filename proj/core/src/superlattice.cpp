#include "lpdc/superlattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

constexpr double kPhasematchTolerance = 1e-6;  // rad/um

bool same_length(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

bool same_crystal(const Segment& a, const Segment& b) {
  return a.material.name() == b.material.name() && same_length(a.length, b.length) && a.cut_angle == b.cut_angle;
}

bool same_spacer(const Segment& a, const Segment& b) {
  return a.material.name() == b.material.name() && same_length(a.length, b.length) &&
         a.axis_flip == b.axis_flip && a.phase_offset == b.phase_offset;
}

}  // namespace

Segment Segment::crystal(Material material, double length_um, double cut_angle) {
  return Segment{std::move(material), length_um, SegmentKind::nonlinear, cut_angle, false, 0.0};
}

Segment Segment::spacer(Material material, double length_um, bool axis_flip) {
  return Segment{std::move(material), length_um, SegmentKind::spacer, 0.0, axis_flip, 0.0};
}

PhasematchConfig PhasematchConfig::degenerate(double pump_wavelength_um, Photon extraordinary) {
  return PhasematchConfig{wavelength_to_omega(pump_wavelength_um) / 2.0, extraordinary};
}

FieldRoles field_roles(const Segment& segment, Photon extraordinary_photon) {
  Polarization parallel = Polarization::ordinary();
  Polarization cross = Polarization::ordinary();
  if (segment.kind == SegmentKind::nonlinear) {
    parallel = Polarization::extraordinary(segment.cut_angle);
  } else if (segment.axis_flip) {
    cross = Polarization::extraordinary(kPi / 2.0);
  } else {
    parallel = Polarization::extraordinary(kPi / 2.0);
  }
  if (extraordinary_photon == Photon::signal) return {parallel, parallel, cross};
  return {parallel, cross, parallel};
}

double phase_mismatch(const Segment& segment, const PhasematchConfig& config, double nu_s, double nu_i) {
  const FieldRoles roles = field_roles(segment, config.extraordinary_photon);
  const double w0 = config.omega0;
  return wavevector(segment.material, roles.pump, 2.0 * w0 + (nu_s + nu_i)) -
         wavevector(segment.material, roles.signal, w0 + nu_s) -
         wavevector(segment.material, roles.idler, w0 + nu_i);
}

TauCoefficients segment_tau(const Segment& segment, const PhasematchConfig& config) {
  const FieldRoles roles = field_roles(segment, config.extraordinary_photon);
  const double w0 = config.omega0;
  const double kp = reciprocal_group_velocity(segment.material, roles.pump, 2.0 * w0);
  const double ks = reciprocal_group_velocity(segment.material, roles.signal, w0);
  const double ki = reciprocal_group_velocity(segment.material, roles.idler, w0);
  const double scale = segment.length / std::numbers::sqrt2;
  return {scale * (ks + ki - 2.0 * kp), scale * (ks - ki)};
}

double dirichlet_ratio(int n, double phi) {
  // phi = 2 pi m + delta, |delta| <= pi
  const double m = std::nearbyint(phi / kTwoPi);
  const double delta = phi - kTwoPi * m;
  const double sign = (std::fmod(std::abs(m) * (n - 1), 2.0) == 0.0) ? 1.0 : -1.0;
  if (std::abs(delta) < 1e-8) {
    return sign * n * (1.0 - (static_cast<double>(n) * n - 1.0) * delta * delta / 24.0);
  }
  return sign * std::sin(n * delta / 2.0) / std::sin(delta / 2.0);
}

std::complex<double> dirichlet_kernel(int n, double phi) {
  // The kernel is 2 pi periodic; work with the reduced phase so that the
  // sign factors of the ratio and of exp(i (N-1) phi/2) cancel exactly.
  const double delta = phi - kTwoPi * std::nearbyint(phi / kTwoPi);
  const double half = 0.5 * (n - 1) * delta;
  return std::polar(dirichlet_ratio(n, delta), half);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double WalkoffTimeline::max_separation() const {
  double best = 0.0;
  for (std::size_t v = 0; v < signal.size() && v < idler.size(); ++v) {
    best = std::max(best, std::abs(signal[v].delay - idler[v].delay));
  }
  return best;
}

Superlattice::Superlattice(std::vector<Segment> segments, PhasematchConfig config)
    : segments_(std::move(segments)), config_(config) {
  if (segments_.empty()) throw Error(ErrorCode::invalid_input, "stack has no segments");
  if (!(config_.omega0 > 0.0)) throw Error(ErrorCode::invalid_input, "omega0 must be positive");

  const double lambda0 = omega_to_wavelength(config_.omega0);
  const double lambda_p = lambda0 / 2.0;
  bool first = true;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const Segment& seg = segments_[s];
    if (!(seg.length > 0.0)) throw Error(ErrorCode::invalid_input, "segment lengths must be positive");
    seg.material.require_in_range(lambda0);
    seg.material.require_in_range(lambda_p);
    if (seg.kind == SegmentKind::nonlinear) {
      if (!(seg.cut_angle >= 0.0 && seg.cut_angle <= kPi / 2.0)) {
        throw Error(ErrorCode::invalid_input, "cut angle must lie in [0, 90] degrees");
      }
      const double dk0 = phase_mismatch(seg, config_, 0.0, 0.0);
      if (std::abs(dk0) > kPhasematchTolerance) {
        std::ostringstream msg;
        msg << seg.material.name() << " segment " << s << " cut at " << rad_to_deg(seg.cut_angle)
            << " deg is not phasematched at " << um_to_nm(lambda_p) << " nm pump (dk0 = " << dk0
            << " rad/um)";
        throw Error(ErrorCode::invalid_input, msg.str());
      }
      if (first) first_crystal_ = s;
      first = false;
      ++crystal_count_;
    } else if (!has_spacer_) {
      has_spacer_ = true;
      first_spacer_ = s;
    }
  }
  if (crystal_count_ == 0) throw Error(ErrorCode::invalid_input, "stack has no nonlinear segment");

  // Periodic: C C ... C, or C S C S ... C with identical C's and S's.
  const Segment& c0 = segments_[first_crystal_];
  if (!has_spacer_) {
    periodic_ = std::all_of(segments_.begin(), segments_.end(),
                            [&](const Segment& x) { return same_crystal(x, c0); });
  } else {
    periodic_ = segments_.size() % 2 == 1 && first_crystal_ == 0;
    for (std::size_t s = 0; periodic_ && s < segments_.size(); ++s) {
      const Segment& x = segments_[s];
      periodic_ = (s % 2 == 0) ? (x.kind == SegmentKind::nonlinear && same_crystal(x, c0))
                               : (x.kind == SegmentKind::spacer && same_spacer(x, segments_[1]));
    }
  }
}

double Superlattice::total_length() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length;
  return total;
}

void Superlattice::require_periodic(const char* what) const {
  if (!periodic_) {
    throw Error(ErrorCode::non_periodic_stack,
                std::string(what) + " needs N identical crystals with N-1 identical spacers");
  }
}

double Superlattice::crystal_length() const {
  require_periodic("crystal_length");
  return segments_[first_crystal_].length;
}

double Superlattice::spacer_length() const {
  require_periodic("spacer_length");
  return has_spacer_ ? segments_[first_spacer_].length : 0.0;
}

double Superlattice::crystal_mismatch(double nu_s, double nu_i) const {
  return phase_mismatch(segments_[first_crystal_], config_, nu_s, nu_i);
}

double Superlattice::spacer_mismatch(double nu_s, double nu_i) const {
  if (!has_spacer_) throw Error(ErrorCode::invalid_input, "stack has no spacer");
  return phase_mismatch(segments_[first_spacer_], config_, nu_s, nu_i);
}

double Superlattice::phi(double nu_s, double nu_i) const {
  require_periodic("phi");
  const Segment& c = segments_[first_crystal_];
  double value = c.length * phase_mismatch(c, config_, nu_s, nu_i);
  if (has_spacer_) {
    const Segment& s = segments_[first_spacer_];
    value += s.length * phase_mismatch(s, config_, nu_s, nu_i) + s.phase_offset;
  }
  return value;
}

std::complex<double> Superlattice::superlattice_factor(double nu_s, double nu_i) const {
  return dirichlet_kernel(crystal_count_, phi(nu_s, nu_i));
}

double Superlattice::single_crystal_factor(double nu_s, double nu_i) const {
  require_periodic("single_crystal_factor");
  const Segment& c = segments_[first_crystal_];
  return sinc(0.5 * c.length * phase_mismatch(c, config_, nu_s, nu_i));
}

std::complex<double> Superlattice::pmf(double nu_s, double nu_i) const {
  if (!periodic_) return pmf_general(nu_s, nu_i);
  const Segment& c = segments_[first_crystal_];
  const double lk = c.length * phase_mismatch(c, config_, nu_s, nu_i);
  double period = lk;
  if (has_spacer_) {
    const Segment& s = segments_[first_spacer_];
    period += s.length * phase_mismatch(s, config_, nu_s, nu_i) + s.phase_offset;
  }
  return dirichlet_kernel(crystal_count_, period) * sinc(0.5 * lk);
}

std::complex<double> Superlattice::pmf_general(double nu_s, double nu_i) const {
  const double reference_length = segments_[first_crystal_].length;
  std::complex<double> sum{0.0, 0.0};
  double accumulated = 0.0;
  double reference_phase = 0.0;
  bool first = true;
  for (const Segment& seg : segments_) {
    const double dk = phase_mismatch(seg, config_, nu_s, nu_i);
    if (seg.kind == SegmentKind::nonlinear) {
      const double half = 0.5 * seg.length * dk;
      if (first) {
        reference_phase = half;
        first = false;
      }
      sum += (seg.length / reference_length) * sinc(half) *
             std::polar(1.0, accumulated + half - reference_phase);
      accumulated += seg.length * dk;
    } else {
      accumulated += seg.length * dk + seg.phase_offset;
    }
  }
  return sum;
}

TauCoefficients Superlattice::tau() const {
  require_periodic("tau");
  TauCoefficients t = segment_tau(segments_[first_crystal_], config_);
  if (has_spacer_) {
    const TauCoefficients s = segment_tau(segments_[first_spacer_], config_);
    t.plus += s.plus;
    t.minus += s.minus;
  }
  return t;
}

WalkoffTimeline Superlattice::walkoff_timeline(double birth_position) const {
  // Locate the birth segment; faces belong to the adjacent crystal.
  double start = 0.0;
  std::size_t birth_segment = segments_.size();
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const double end = start + segments_[s].length;
    if (segments_[s].kind == SegmentKind::nonlinear && birth_position >= start && birth_position <= end) {
      birth_segment = s;
    }
    start = end;
  }
  if (birth_segment == segments_.size()) {
    std::ostringstream msg;
    msg << "birth position " << birth_position << " um is not inside a nonlinear segment";
    throw Error(ErrorCode::birth_outside_crystal, msg.str());
  }

  WalkoffTimeline timeline;
  timeline.signal.push_back({birth_position, 0.0});
  timeline.idler.push_back({birth_position, 0.0});
  double segment_start = 0.0;
  for (std::size_t s = 0; s < birth_segment; ++s) segment_start += segments_[s].length;

  double z = birth_position;
  double ts = 0.0;
  double ti = 0.0;
  const double w0 = config_.omega0;
  for (std::size_t s = birth_segment; s < segments_.size(); ++s) {
    const Segment& seg = segments_[s];
    const double segment_end = segment_start + seg.length;
    const double dz = segment_end - z;
    if (dz > 0.0) {
      const FieldRoles roles = field_roles(seg, config_.extraordinary_photon);
      const double kp = reciprocal_group_velocity(seg.material, roles.pump, 2.0 * w0);
      ts += (reciprocal_group_velocity(seg.material, roles.signal, w0) - kp) * dz;
      ti += (reciprocal_group_velocity(seg.material, roles.idler, w0) - kp) * dz;
      timeline.signal.push_back({segment_end, ts});
      timeline.idler.push_back({segment_end, ti});
    }
    z = segment_end;
    segment_start = segment_end;
  }
  return timeline;
}

}  // namespace lpdc
