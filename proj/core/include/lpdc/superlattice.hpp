#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lpdc/dispersion.hpp"

namespace lpdc {

enum class Photon { signal, idler };

enum class SegmentKind { nonlinear, spacer };

/// One slab of the stack. Lengths in um, angles in radians.
///
/// Nonlinear segments are cut at `cut_angle` for degenerate collinear type-II
/// (pump and one daughter photon extraordinary). Spacers are linear slabs with
/// the optic axis perpendicular to propagation; with `axis_flip == false` the
/// spacer's extraordinary axis lies along the crystal's extraordinary
/// polarization, so the pump and the crystal-extraordinary photon see the
/// spacer's n_e. `axis_flip` rotates the spacer by 90 degrees.
struct Segment {
  Material material;
  double length = 0.0;
  SegmentKind kind = SegmentKind::nonlinear;
  double cut_angle = 0.0;
  bool axis_flip = false;
  // Constant pump-vs-pair phase added on traversal (spacers only), e.g. a tilt trim.
  double phase_offset = 0.0;

  static Segment crystal(Material material, double length_um, double cut_angle);
  static Segment spacer(Material material, double length_um, bool axis_flip = false);
};

struct PhasematchConfig {
  double omega0 = 0.0;  // degenerate PDC centre, rad/fs; the pump centre is 2 omega0
  Photon extraordinary_photon = Photon::signal;

  static PhasematchConfig degenerate(double pump_wavelength_um, Photon extraordinary = Photon::signal);
};

struct FieldRoles {
  Polarization pump;
  Polarization signal;
  Polarization idler;
};

FieldRoles field_roles(const Segment& segment, Photon extraordinary_photon);

/// Exact mismatch k_p(2w0 + ns + ni) - k_s(w0 + ns) - k_i(w0 + ni), rad/um.
double phase_mismatch(const Segment& segment, const PhasematchConfig& config, double nu_s, double nu_i);

struct TauCoefficients {
  double plus = 0.0;   // fs
  double minus = 0.0;  // fs
};

/// Group-delay mismatch contributed by one slab at omega0:
///   plus  = 2^-1/2 length (k_s' + k_i' - 2 k_p')
///   minus = 2^-1/2 length (k_s' - k_i')
TauCoefficients segment_tau(const Segment& segment, const PhasematchConfig& config);

/// sin(N phi/2)/sin(phi/2), continuous through phi = 2 pi m where it equals N (-1)^(m(N-1)).
double dirichlet_ratio(int n, double phi);

/// sum_{j<N} exp(i j phi) = exp(i (N-1) phi/2) dirichlet_ratio(N, phi).
std::complex<double> dirichlet_kernel(int n, double phi);

double sinc(double x);

struct TimelineVertex {
  double position = 0.0;  // um from the stack entrance
  double delay = 0.0;     // fs after the pump
};

struct WalkoffTimeline {
  std::vector<TimelineVertex> signal;
  std::vector<TimelineVertex> idler;

  // max |t_s - t_i| over the vertices (the timelines are piecewise linear).
  double max_separation() const;
};

/// An ordered stack of nonlinear and spacer slabs.
///
/// A stack is periodic when it holds N identical crystals either back to back
/// or separated by N-1 identical spacers; only then do phi(), tau() and the
/// closed-form PMF apply. pmf() falls back to the segment-by-segment sum for
/// any other arrangement.
///
/// PMF phase convention: crystal j contributes sinc(L dk_j/2) exp(i phi_j)
/// where phi_j is the pump-pair phase accumulated between the midpoint of the
/// first crystal and the midpoint of crystal j, normalised by the first
/// crystal length. For periodic stacks this is exactly
///   sum_j exp(i j Phi) sinc(L dk/2).
class Superlattice {
 public:
  Superlattice(std::vector<Segment> segments, PhasematchConfig config);

  const std::vector<Segment>& segments() const { return segments_; }
  const PhasematchConfig& config() const { return config_; }

  int crystal_count() const { return crystal_count_; }
  bool is_periodic() const { return periodic_; }
  double total_length() const;

  // Periodic stacks only.
  double crystal_length() const;
  double spacer_length() const;  // 0 when crystals are back to back

  // Mismatch of the first crystal / first spacer (spacer: throws if none).
  double crystal_mismatch(double nu_s, double nu_i) const;
  double spacer_mismatch(double nu_s, double nu_i) const;

  // One-period phase L dk + h dkappa (+ spacer phase offset). Periodic only.
  double phi(double nu_s, double nu_i) const;

  std::complex<double> pmf(double nu_s, double nu_i) const;
  std::complex<double> pmf_general(double nu_s, double nu_i) const;

  // The two factors of the closed form. Periodic only.
  std::complex<double> superlattice_factor(double nu_s, double nu_i) const;
  double single_crystal_factor(double nu_s, double nu_i) const;

  // Sum of segment_tau over one period. Periodic only.
  TauCoefficients tau() const;

  // Signal/idler arrival times relative to the pump for a pair born at
  // `birth_position` (um), which must lie inside a nonlinear segment.
  WalkoffTimeline walkoff_timeline(double birth_position) const;

 private:
  void require_periodic(const char* what) const;

  std::vector<Segment> segments_;
  PhasematchConfig config_;
  int crystal_count_ = 0;
  bool periodic_ = false;
  std::size_t first_crystal_ = 0;
  std::size_t first_spacer_ = 0;
  bool has_spacer_ = false;
};

}  // namespace lpdc
