#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "lpdc/jsa.hpp"

namespace lpdc {

struct DelayWindow {
  double min_fs = -200.0;
  double max_fs = 200.0;
  std::size_t points = 801;
};

struct TraceMinimum {
  double delay = 0.0;  // fs, refined between samples
  double rate = 1.0;
};

/// Coincidence rate normalised to unit background, R = 2 P_c.
struct HomTrace {
  std::vector<double> delays;  // fs
  std::vector<double> rates;
  // Local minima of the sampled trace below 0.9, each refined on the
  // continuous R(tau). Ordered by delay.
  std::vector<TraceMinimum> minima;
  double mode_overlap = 1.0;
};

struct HomSummary {
  double visibility = 0.0;       // 1 - min R
  std::optional<double> width;   // FWHM of 1 - R around the global minimum, fs
  bool multimodal = false;       // >= 2 distinct minima below R = 0.9
  std::vector<TraceMinimum> minima;
};

/// R(tau) = 1 - beta Re sum f(ns, ni) f*(ni, ns) exp(i (ns - ni) tau) dns dni
/// on a square grid, evaluated by diagonal sums so each delay costs O(n).
class HomIntegrand {
 public:
  explicit HomIntegrand(const JointAmplitude& jsa, double mode_overlap = 1.0);

  double rate(double delay_fs) const;

 private:
  std::vector<std::complex<double>> diagonal_;  // index d + n - 1, d = row - col
  double step_ = 0.0;
  double mode_overlap_ = 1.0;
};

HomTrace hom_trace(const JointAmplitude& jsa, const DelayWindow& window, double mode_overlap = 1.0);

/// Throws Error{dip_not_resolved} when R < 0.99 at either end of the trace.
/// A flat trace yields visibility 0 and no width.
HomSummary visibility_and_width(const HomTrace& trace);

/// Like visibility_and_width(trace).width but throws Error{dip_not_resolved}
/// when the width is undefined.
double dip_width(const HomTrace& trace);

/// +-4 max(|tau_+|, |tau_-|) (whole-stack sums for aperiodic stacks), clipped
/// to 45% of the alias period 2 pi / dnu of the grid.
DelayWindow default_delay_window(const Superlattice& stack, const FrequencyGrid& grid, std::size_t points = 801);

}  // namespace lpdc
