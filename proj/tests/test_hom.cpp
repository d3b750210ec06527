#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "lpdc/error.hpp"
#include "lpdc/figures.hpp"
#include "lpdc/hom.hpp"
#include "lpdc/materials.hpp"
#include "lpdc/stack_io.hpp"
#include "lpdc/units.hpp"

using namespace lpdc;

namespace {

const MaterialDb& db() {
  static const MaterialDb d = MaterialDb::builtin();
  return d;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::io;
}

// Direct double sum, no diagonal bookkeeping.
double rate_oracle(const JointAmplitude& f, double tau) {
  const auto n = f.values.rows();
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double d = f.grid.signal_detuning(static_cast<std::size_t>(r)) - f.grid.idler_detuning(static_cast<std::size_t>(c));
      acc += f.values(r, c) * std::conj(f.values(c, r)) * std::polar(1.0, d * tau);
    }
  }
  return 1.0 - acc.real() * f.cell_area();
}

JointAmplitude random_amplitude(std::mt19937_64& rng, std::size_t n = 64) {
  std::normal_distribution<double> g;
  const FrequencyGrid grid = FrequencyGrid::square(2.0, 0.2, n);
  JointAmplitude f{grid, Eigen::MatrixXcd(n, n), false};
  for (Eigen::Index r = 0; r < f.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < f.values.cols(); ++c) f.values(r, c) = {g(rng), g(rng)};
  }
  f.normalize();
  return f;
}

HomTrace synthetic(std::function<double(double)> r, double lo, double hi, std::size_t n) {
  HomTrace t;
  for (std::size_t k = 0; k < n; ++k) {
    const double tau = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    t.delays.push_back(tau);
    t.rates.push_back(r(tau));
  }
  return t;
}

}  // namespace

TEST_CASE("diagonal-sum rate matches the direct double sum") {
  std::mt19937_64 rng(3);
  const JointAmplitude f = random_amplitude(rng);
  const HomIntegrand h(f);
  for (double tau : {-300.0, -17.5, 0.0, 4.25, 120.0}) {
    CHECK(h.rate(tau) == doctest::Approx(rate_oracle(f, tau)).epsilon(1e-12));
  }
}

TEST_CASE("symmetric amplitude gives a perfect dip") {
  std::mt19937_64 rng(5);
  JointAmplitude f = random_amplitude(rng);
  f.values = (f.values + f.values.transpose()).eval();
  f.normalize();
  CHECK(std::abs(HomIntegrand(f).rate(0.0)) < 1e-12);
}

TEST_CASE("rate returns to the background far from zero delay") {
  // Smooth correlated amplitude: washout is fast.
  const FrequencyGrid g = FrequencyGrid::square(2.0, 0.3, 256);
  JointAmplitude f{g, Eigen::MatrixXcd(256, 256), false};
  for (std::size_t r = 0; r < 256; ++r) {
    for (std::size_t c = 0; c < 256; ++c) {
      const double s = g.signal_detuning(r);
      const double i = g.idler_detuning(c);
      f.values(r, c) = std::exp(-200.0 * (s + i) * (s + i) - 30.0 * (s - i - 0.01) * (s - i - 0.01));
    }
  }
  f.normalize();
  const HomIntegrand h(f);
  CHECK(std::abs(h.rate(900.0) - 1.0) < 1e-3);
  CHECK(std::abs(h.rate(-900.0) - 1.0) < 1e-3);
  CHECK(h.rate(0.0) >= 0.0);
}

TEST_CASE("trace invariances") {
  std::mt19937_64 rng(9);
  JointAmplitude f = random_amplitude(rng);
  const HomIntegrand h(f);
  JointAmplitude phased = f;
  phased.values *= std::polar(1.0, 1.3);
  JointAmplitude swapped = f;
  swapped.values = f.values.transpose().eval();
  const HomIntegrand hp(phased);
  const HomIntegrand hs(swapped);
  for (double tau : {-40.0, 0.0, 13.0}) {
    CHECK(hp.rate(tau) == doctest::Approx(h.rate(tau)).epsilon(1e-12));
    CHECK(hs.rate(-tau) == doctest::Approx(h.rate(tau)).epsilon(1e-12));
  }
}

TEST_CASE("zero-delay dip depth is the exchange overlap") {
  std::mt19937_64 rng(21);
  const JointAmplitude f = random_amplitude(rng);
  const std::complex<double> overlap = f.values.cwiseProduct(f.values.transpose().conjugate()).sum() * f.cell_area();
  CHECK(1.0 - HomIntegrand(f).rate(0.0) == doctest::Approx(overlap.real()).epsilon(1e-12));
}

TEST_CASE("visibility and width of synthetic traces") {
  const HomTrace gauss = synthetic([](double t) { return 1.0 - std::exp(-t * t); }, -6.0, 6.0, 2401);
  const HomSummary s = visibility_and_width(gauss);
  CHECK(s.visibility == doctest::Approx(1.0));
  REQUIRE(s.width.has_value());
  CHECK(*s.width == doctest::Approx(2.0 * std::sqrt(std::log(2.0))).epsilon(1e-5));

  const HomTrace flat = synthetic([](double) { return 1.0; }, -5.0, 5.0, 101);
  const HomSummary f = visibility_and_width(flat);
  CHECK(f.visibility == 0.0);
  CHECK_FALSE(f.width.has_value());
  CHECK(code_of([&] { (void)dip_width(flat); }) == ErrorCode::dip_not_resolved);

  const HomTrace cut = synthetic([](double t) { return 1.0 - std::exp(-t * t); }, -1.0, 6.0, 701);
  CHECK(code_of([&] { (void)visibility_and_width(cut); }) == ErrorCode::dip_not_resolved);
}

TEST_CASE("HOM preconditions") {
  const FrequencyGrid rect{2.0, 0.3, 0.2, 64, 64};
  JointAmplitude f{rect, Eigen::MatrixXcd::Ones(64, 64), false};
  f.normalize();
  CHECK(code_of([&] { (void)hom_trace(f, {}); }) == ErrorCode::non_square_grid);
  JointAmplitude g{FrequencyGrid::square(2.0, 0.3, 64), Eigen::MatrixXcd::Ones(64, 64), false};
  CHECK(code_of([&] { (void)hom_trace(g, {}); }) == ErrorCode::not_normalized);
  g.normalize();
  CHECK(code_of([&] { (void)hom_trace(g, {}, 1.5); }) == ErrorCode::invalid_input);
}

TEST_CASE("mode overlap scales the interference term") {
  std::mt19937_64 rng(4);
  const JointAmplitude f = random_amplitude(rng);
  const double full = HomIntegrand(f, 1.0).rate(2.0);
  const double half = HomIntegrand(f, 0.5).rate(2.0);
  CHECK(1.0 - half == doctest::Approx(0.5 * (1.0 - full)).epsilon(1e-12));
}

TEST_CASE("superlattice HOM regimes") {
  const PresetCatalog cat = PresetCatalog::builtin();
  auto run = [&](const char* name, std::size_t points = 801) {
    const StackConfig cfg = parse_stack_config(cat.get(name).at("stack"), db());
    const FrequencyGrid g = cfg.grid();
    const JointAmplitude f = synthesize_jsa(cfg.superlattice(), cfg.pump, g);
    const HomTrace t = hom_trace(f, default_delay_window(cfg.superlattice(), g, points));
    return visibility_and_width(t);
  };
  const HomSummary a = run("fig4a");
  const HomSummary b = run("fig4b");
  const HomSummary c = run("fig4c");
  const HomSummary d = run("fig4d");
  REQUIRE(a.width);
  REQUIRE(b.width);
  REQUIRE(c.width);
  CHECK_FALSE(a.multimodal);
  CHECK(a.visibility < 1.0);
  CHECK(b.visibility < a.visibility);
  CHECK(*b.width > *a.width);
  CHECK(std::abs(c.visibility - a.visibility) <= 0.05 * a.visibility);
  CHECK(std::abs(*c.width - *a.width) <= 0.05 * *a.width);
  CHECK(d.multimodal);
  CHECK(d.minima.size() == 2);
  CHECK(d.visibility < 0.9 * a.visibility);

  // Frozen values on the preset grids.
  CHECK(a.visibility == doctest::Approx(0.931694).epsilon(1e-4));
  CHECK(b.visibility == doctest::Approx(0.872267).epsilon(1e-4));
  CHECK(c.visibility == doctest::Approx(0.925003).epsilon(1e-4));
  CHECK(d.visibility == doctest::Approx(0.466078).epsilon(1e-4));
  CHECK(d.minima[0].delay == doctest::Approx(-98.026).epsilon(1e-3));
  CHECK(std::abs(d.minima[1].delay) < 0.5);

  // Doubling the delay sampling leaves the visibility alone.
  const HomSummary a2 = run("fig4a", 1601);
  CHECK(std::abs(a2.visibility - a.visibility) < 1e-4);
}
