#include "lpdc/hom.hpp"

#include <algorithm>
#include <cmath>

#include "lpdc/error.hpp"
#include "lpdc/units.hpp"

namespace lpdc {
namespace {

constexpr double kDipLevel = 0.9;
// A local minimum only counts as a separate dip if R climbs at least this far
// above it before the next one; suppresses numerical ripple on a dip floor.
constexpr double kProminence = 0.02;

TraceMinimum refine(const HomIntegrand& integrand, double lo, double hi) {
  constexpr double ratio = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = integrand.rate(x1);
  double f2 = integrand.rate(x2);
  for (int it = 0; it < 80 && b - a > 1e-9; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = integrand.rate(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = integrand.rate(x2);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, integrand.rate(x)};
}

}  // namespace

HomIntegrand::HomIntegrand(const JointAmplitude& jsa, double mode_overlap) : mode_overlap_(mode_overlap) {
  if (!jsa.grid.is_square()) {
    throw Error(ErrorCode::non_square_grid, "HOM integral needs identical signal and idler axes");
  }
  jsa.require_normalized();
  const auto n = static_cast<Eigen::Index>(jsa.grid.signal_points);
  step_ = jsa.grid.signal_step();
  diagonal_.assign(static_cast<std::size_t>(2 * n - 1), {0.0, 0.0});
  const double area = jsa.cell_area();
  const auto& f = jsa.values;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      diagonal_[static_cast<std::size_t>(r - c + n - 1)] += f(r, c) * std::conj(f(c, r)) * area;
    }
  }
}

double HomIntegrand::rate(double delay_fs) const {
  const auto n = static_cast<long>((diagonal_.size() + 1) / 2);
  double overlap = 0.0;
  // Re sum_d g_d exp(i d dnu tau); pair d and -d where possible.
  const double theta = step_ * delay_fs;
  for (long d = -(n - 1); d <= n - 1; ++d) {
    const auto& g = diagonal_[static_cast<std::size_t>(d + n - 1)];
    const double angle = theta * static_cast<double>(d);
    overlap += g.real() * std::cos(angle) - g.imag() * std::sin(angle);
  }
  return 1.0 - mode_overlap_ * overlap;
}

HomTrace hom_trace(const JointAmplitude& jsa, const DelayWindow& window, double mode_overlap) {
  if (window.points < 3 || !(window.max_fs > window.min_fs)) {
    throw Error(ErrorCode::invalid_input, "delay window needs at least 3 points and max > min");
  }
  if (!(mode_overlap >= 0.0 && mode_overlap <= 1.0)) {
    throw Error(ErrorCode::invalid_input, "mode overlap must lie in [0, 1]");
  }
  const HomIntegrand integrand(jsa, mode_overlap);
  HomTrace trace;
  trace.mode_overlap = mode_overlap;
  trace.delays.resize(window.points);
  trace.rates.resize(window.points);
  const double step = (window.max_fs - window.min_fs) / static_cast<double>(window.points - 1);
  const auto points = static_cast<long>(window.points);

#pragma omp parallel for schedule(static)
  for (long k = 0; k < points; ++k) {
    const double tau = window.min_fs + step * static_cast<double>(k);
    trace.delays[static_cast<std::size_t>(k)] = tau;
    trace.rates[static_cast<std::size_t>(k)] = integrand.rate(tau);
  }

  // Candidate minima: sampled local minima below the dip level.
  const auto& R = trace.rates;
  std::vector<std::size_t> candidates;
  for (std::size_t k = 1; k + 1 < R.size(); ++k) {
    if (R[k] < kDipLevel && R[k] < R[k - 1] && R[k] <= R[k + 1]) candidates.push_back(k);
  }
  // Merge candidates not separated by a prominent maximum, keeping the lower.
  std::vector<std::size_t> kept;
  for (std::size_t k : candidates) {
    if (!kept.empty()) {
      const std::size_t prev = kept.back();
      const double ridge = *std::max_element(R.begin() + static_cast<long>(prev), R.begin() + static_cast<long>(k) + 1);
      if (ridge - std::max(R[prev], R[k]) < kProminence) {
        if (R[k] < R[prev]) kept.back() = k;
        continue;
      }
    }
    kept.push_back(k);
  }
  for (std::size_t k : kept) {
    trace.minima.push_back(refine(integrand, trace.delays[k - 1], trace.delays[k + 1]));
  }
  return trace;
}

HomSummary visibility_and_width(const HomTrace& trace) {
  const auto& R = trace.rates;
  if (R.size() < 3) throw Error(ErrorCode::invalid_input, "trace too short");
  if (R.front() < 0.99 || R.back() < 0.99) {
    throw Error(ErrorCode::dip_not_resolved, "trace does not return to the background at both ends; widen the delay window");
  }
  HomSummary out;
  out.minima = trace.minima;
  out.multimodal = trace.minima.size() >= 2;

  const auto global = static_cast<std::size_t>(std::min_element(R.begin(), R.end()) - R.begin());
  double min_rate = R[global];
  for (const auto& m : trace.minima) min_rate = std::min(min_rate, m.rate);
  out.visibility = std::clamp(1.0 - min_rate, 0.0, 1.0);
  if (out.visibility < 1e-9) return out;

  // Half maximum of 1 - R, measured from the sampled trace.
  const double depth = 1.0 - R[global];
  const double level = 1.0 - 0.5 * depth;
  std::size_t left = global;
  while (left > 0 && R[left] < level) --left;
  std::size_t right = global;
  while (right + 1 < R.size() && R[right] < level) ++right;
  if (R[left] < level || R[right] < level) return out;
  auto cross = [&](std::size_t outside, std::size_t inside) {
    const double t = (level - R[inside]) / (R[outside] - R[inside]);
    return trace.delays[inside] + t * (trace.delays[outside] - trace.delays[inside]);
  };
  out.width = cross(right, right - 1) - cross(left, left + 1);
  return out;
}

double dip_width(const HomTrace& trace) {
  const HomSummary s = visibility_and_width(trace);
  if (!s.width) throw Error(ErrorCode::dip_not_resolved, "no interference dip in the trace");
  return *s.width;
}

DelayWindow default_delay_window(const Superlattice& stack, const FrequencyGrid& grid, std::size_t points) {
  TauCoefficients tau;
  if (stack.is_periodic()) {
    tau = stack.tau();
  } else {
    for (const auto& s : stack.segments()) {
      const auto t = segment_tau(s, stack.config());
      tau.plus += t.plus;
      tau.minus += t.minus;
    }
  }
  double half = 4.0 * std::max(std::abs(tau.plus), std::abs(tau.minus));
  const double alias = kTwoPi / grid.signal_step();
  half = std::min(half, 0.45 * alias);
  if (!(half > 0.0)) half = 0.45 * alias;
  return {-half, half, points};
}

}  // namespace lpdc
