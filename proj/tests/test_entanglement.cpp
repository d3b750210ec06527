#include <doctest.h>

#include <cmath>

#include "lpdc/design.hpp"
#include "lpdc/entanglement.hpp"
#include "lpdc/error.hpp"
#include "lpdc/materials.hpp"

using namespace lpdc;

namespace {

// exp(-a nu_+^2 - b nu_-^2) sampled on a square grid.
JointAmplitude correlated_gaussian(double a, double b, double half_width, std::size_t n) {
  const FrequencyGrid g = FrequencyGrid::square(2.0, half_width, n);
  JointAmplitude f{g, Eigen::MatrixXcd(n, n), false};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double s = g.signal_detuning(r);
      const double i = g.idler_detuning(c);
      const double p = (s + i) / std::numbers::sqrt2;
      const double m = (s - i) / std::numbers::sqrt2;
      f.values(r, c) = std::exp(-a * p * p - b * m * m);
    }
  }
  f.normalize();
  return f;
}

// K of the Gaussian above: the two-mode squeezing parameter form.
double gaussian_schmidt_number(double a, double b) { return 0.5 * (std::sqrt(a / b) + std::sqrt(b / a)); }

const MaterialDb& db() {
  static const MaterialDb d = MaterialDb::builtin();
  return d;
}

}  // namespace

TEST_CASE("correlated Gaussian matches the analytic Schmidt number") {
  // Widths chosen so both axes are resolved and contained at 512 points.
  const double a = 1.0 / (2.0 * 0.01 * 0.01);
  const double b = 1.0 / (2.0 * 0.08 * 0.08);
  const SchmidtResult r = schmidt_decompose(correlated_gaussian(a, b, 0.45, 512));
  CHECK(r.schmidt_number == doctest::Approx(gaussian_schmidt_number(a, b)).epsilon(0.005));
  double sum = 0.0;
  for (double l : r.coefficients) sum += l;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.purity == doctest::Approx(1.0 / r.schmidt_number));
  for (std::size_t k = 1; k < r.coefficients.size(); ++k) CHECK(r.coefficients[k] <= r.coefficients[k - 1]);
}

TEST_CASE("separable amplitude has a single Schmidt mode") {
  const SchmidtResult r = schmidt_decompose(correlated_gaussian(400.0, 400.0, 0.3, 128));
  CHECK(r.schmidt_number == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.entropy == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("Schmidt number ignores global phase and axis exchange") {
  JointAmplitude f = correlated_gaussian(2000.0, 150.0, 0.3, 128);
  f.values(3, 90) += std::complex<double>(0.3, -0.1);  // break the exchange symmetry
  f.normalize();
  const double k = schmidt_decompose(f).schmidt_number;
  JointAmplitude g = f;
  g.values *= std::polar(1.0, 0.77);
  CHECK(schmidt_decompose(g).schmidt_number == doctest::Approx(k).epsilon(1e-9));
  g.values = f.values.transpose().eval();
  CHECK(schmidt_decompose(g).schmidt_number == doctest::Approx(k).epsilon(1e-9));
}

TEST_CASE("Schmidt modes reconstruct the amplitude") {
  const JointAmplitude f = correlated_gaussian(2000.0, 150.0, 0.3, 96);
  const SchmidtResult r = schmidt_decompose(f, true);
  Eigen::VectorXd s(static_cast<Eigen::Index>(r.singular_values.size()));
  for (std::size_t k = 0; k < r.singular_values.size(); ++k) s(static_cast<Eigen::Index>(k)) = r.singular_values[k];
  const Eigen::MatrixXcd rebuilt = r.signal_modes * s.asDiagonal() * r.idler_modes.adjoint();
  const Eigen::MatrixXcd scaled = f.values * std::sqrt(f.cell_area());
  CHECK((rebuilt - scaled).norm() < 1e-10 * scaled.norm());
}

TEST_CASE("marginals integrate to one") {
  const JointAmplitude f = correlated_gaussian(2000.0, 150.0, 0.3, 128);
  for (Photon p : {Photon::signal, Photon::idler}) {
    const auto m = marginal_spectrum(f, p);
    double total = 0.0;
    for (double v : m) total += v;
    CHECK(total * f.grid.signal_step() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("unnormalised input is rejected") {
  const FrequencyGrid g = FrequencyGrid::square(2.0, 0.3, 64);
  const JointAmplitude f{g, Eigen::MatrixXcd::Ones(64, 64), false};
  try {
    (void)schmidt_decompose(f);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_normalized);
  }
}

TEST_CASE("longer symmetric superlattices are more entangled") {
  DesignSpec spec(db().get("BBO"), 250.0, db().get("quartz"));
  spec.pump = PumpSpec::from_fwhm(400.0, 1.95);
  double previous = 0.0;
  for (int n : {2, 3, 5}) {
    spec.crystals = n;
    const Superlattice s = build_superlattice(spec, solve_spacer_length(spec).length);
    const double k = schmidt_decompose(synthesize_jsa(s, spec.pump, default_grid(s, spec.pump, 256))).schmidt_number;
    CHECK(k > previous);
    previous = k;
  }
}

TEST_CASE("symmetrised two-crystal JSA: frozen Schmidt number and grid convergence") {
  DesignSpec spec(db().get("BBO"), 250.0, db().get("quartz"));
  spec.pump = PumpSpec::from_fwhm(400.0, 1.95);
  const Superlattice s = build_superlattice(spec, solve_spacer_length(spec).length);
  const double k256 =
      schmidt_decompose(synthesize_jsa(s, spec.pump, default_grid(s, spec.pump, 256), JsaMode::dirichlet_only))
          .schmidt_number;
  const double k512 =
      schmidt_decompose(synthesize_jsa(s, spec.pump, default_grid(s, spec.pump, 512), JsaMode::dirichlet_only))
          .schmidt_number;
  CHECK(k512 > 10.0);
  CHECK(std::abs(k512 - k256) / k512 < 0.005);
  CHECK(k512 == doctest::Approx(36.5795).epsilon(0.01));
}
