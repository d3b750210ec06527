#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "lpdc/design.hpp"
#include "lpdc/error.hpp"
#include "lpdc/materials.hpp"
#include "lpdc/superlattice.hpp"
#include "lpdc/units.hpp"

using namespace lpdc;

namespace {

const MaterialDb& db() {
  static const MaterialDb d = MaterialDb::builtin();
  return d;
}

std::complex<double> geometric_sum(int n, double phi) {
  std::complex<double> s{0.0, 0.0};
  for (int j = 0; j < n; ++j) s += std::polar(1.0, j * phi);
  return s;
}

struct Fixture {
  PhasematchConfig cfg = PhasematchConfig::degenerate(0.4);
  double angle = phasematch_angle(db().get("BBO"), 0.4);
  Segment crystal = Segment::crystal(db().get("BBO"), 250.0, angle);
  Segment quartz = Segment::spacer(db().get("quartz"), 1539.9);

  Superlattice stack(int n, const Segment& spacer) const {
    std::vector<Segment> s;
    for (int j = 0; j < n; ++j) {
      if (j) s.push_back(spacer);
      s.push_back(crystal);
    }
    return Superlattice(s, cfg);
  }
};

}  // namespace

TEST_CASE("Dirichlet kernel equals the direct geometric sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phase(-60.0, 60.0);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_real_distribution<double> tiny(-1e-6, 1e-6);
  std::uniform_int_distribution<int> order(-8, 8);
  for (int k = 0; k < 1000; ++k) {
    const int n = count(rng);
    // Every other sample sits within 1e-6 of a zero of sin(phi/2).
    const double phi = (k % 2) ? phase(rng) : kTwoPi * order(rng) + tiny(rng);
    const auto direct = geometric_sum(n, phi);
    const auto kernel = dirichlet_kernel(n, phi);
    CHECK(std::abs(kernel) == doctest::Approx(std::abs(direct)).epsilon(1e-10));
    CHECK(std::abs(kernel - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
  CHECK(dirichlet_ratio(4, kTwoPi) == doctest::Approx(-4.0));
  CHECK(dirichlet_ratio(5, kTwoPi) == doctest::Approx(5.0));
  CHECK(dirichlet_ratio(1, 1.234) == doctest::Approx(1.0));
}

TEST_CASE("sinc is continuous through zero") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-5) == doctest::Approx(std::sin(1e-5) / 1e-5).epsilon(1e-15));
  CHECK(sinc(2e-4) == doctest::Approx(std::sin(2e-4) / 2e-4).epsilon(1e-15));
  CHECK(sinc(kPi) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("closed-form PMF matches the segment-by-segment sum") {
  Fixture f;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> nu(-0.3, 0.3);
  for (int n : {1, 2, 3, 6}) {
    const Superlattice s = f.stack(n, f.quartz);
    REQUIRE(s.is_periodic());
    for (int k = 0; k < 50; ++k) {
      const double ns = nu(rng);
      const double ni = nu(rng);
      const auto closed = s.pmf(ns, ni);
      const auto general = s.pmf_general(ns, ni);
      const double lk = f.crystal.length * phase_mismatch(f.crystal, f.cfg, ns, ni);
      const double phi = lk + f.quartz.length * phase_mismatch(f.quartz, f.cfg, ns, ni);
      const auto brute = geometric_sum(n, phi) * sinc(0.5 * lk);
      CHECK(std::abs(closed - brute) <= 1e-9 * std::max(1.0, std::abs(brute)));
      CHECK(std::abs(closed - general) <= 1e-9 * std::max(1.0, std::abs(brute)));
    }
  }
}

TEST_CASE("phase mismatch vanishes at the design point") {
  Fixture f;
  CHECK(std::abs(phase_mismatch(f.crystal, f.cfg, 0.0, 0.0)) < 1e-9);
  const Superlattice s = f.stack(2, f.quartz);
  // Only the spacer phase survives at the origin.
  CHECK(std::abs(s.pmf(0.0, 0.0)) == doctest::Approx(std::abs(2.0 * std::cos(0.5 * s.phi(0.0, 0.0)))).epsilon(1e-9));
  CHECK(s.phi(0.0, 0.0) == doctest::Approx(f.quartz.length * phase_mismatch(f.quartz, f.cfg, 0.0, 0.0)).epsilon(1e-9));
  // Mis-cut crystals are rejected.
  Segment bad = f.crystal;
  bad.cut_angle += deg_to_rad(0.5);
  CHECK_THROWS_AS(Superlattice({bad}, f.cfg), Error);
}

TEST_CASE("periodicity detection") {
  Fixture f;
  CHECK(f.stack(3, f.quartz).is_periodic());
  CHECK(Superlattice({f.crystal, f.crystal}, f.cfg).is_periodic());
  Segment other = f.quartz;
  other.length *= 1.1;
  const Superlattice irregular({f.crystal, f.quartz, f.crystal, other, f.crystal}, f.cfg);
  CHECK_FALSE(irregular.is_periodic());
  try {
    (void)irregular.phi(0.0, 0.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_periodic_stack);
  }
  // Falls back to the general sum.
  CHECK(std::abs(irregular.pmf(0.01, -0.02) - irregular.pmf_general(0.01, -0.02)) == 0.0);
  CHECK_FALSE(Superlattice({f.quartz, f.crystal}, f.cfg).is_periodic());
}

TEST_CASE("tau coefficients are the directional derivatives of the period phase") {
  Fixture f;
  for (bool flip : {false, true}) {
    Segment spacer = f.quartz;
    spacer.axis_flip = flip;
    const Superlattice s = f.stack(2, spacer);
    const TauCoefficients t = s.tau();
    const double h = 1e-5;
    const double r = 1.0 / std::numbers::sqrt2;
    // nu_s = (nu_+ + nu_-)/sqrt2, nu_i = (nu_+ - nu_-)/sqrt2
    const double d_minus = (s.phi(h * r, -h * r) - s.phi(-h * r, h * r)) / (2.0 * h);
    const double d_plus = (s.phi(h * r, h * r) - s.phi(-h * r, -h * r)) / (2.0 * h);
    CHECK(-d_minus == doctest::Approx(t.minus).epsilon(1e-4));
    CHECK(-d_plus == doctest::Approx(t.plus).epsilon(1e-4));
  }
}

TEST_CASE("extraordinary photon choice mirrors the JSA") {
  Fixture f;
  PhasematchConfig idler = f.cfg;
  idler.extraordinary_photon = Photon::idler;
  const Segment c = f.crystal;
  CHECK(phase_mismatch(c, f.cfg, 0.03, -0.05) == doctest::Approx(phase_mismatch(c, idler, -0.05, 0.03)).epsilon(1e-12));
  CHECK(segment_tau(c, f.cfg).minus == doctest::Approx(-segment_tau(c, idler).minus).epsilon(1e-12));
}

TEST_CASE("walkoff timeline") {
  Fixture f;
  const double birth = 125.0;
  const double single = Superlattice({f.crystal}, f.cfg).walkoff_timeline(birth).max_separation();
  const double contact = Superlattice({f.crystal, f.crystal}, f.cfg).walkoff_timeline(birth).max_separation();
  const double lattice = f.stack(2, f.quartz).walkoff_timeline(birth).max_separation();
  // 1.5 crystal lengths vs 0.5 in contact, and the spacer undoes the walkoff.
  CHECK(contact == doctest::Approx(3.0 * single).epsilon(1e-9));
  CHECK(lattice == doctest::Approx(single).epsilon(0.05));
  const double one_crystal = Superlattice({f.crystal}, f.cfg).walkoff_timeline(0.0).max_separation();
  CHECK(one_crystal == doctest::Approx(194.3 * 0.25).epsilon(0.01));

  const WalkoffTimeline t = f.stack(2, f.quartz).walkoff_timeline(birth);
  CHECK(t.signal.front().position == birth);
  CHECK(t.signal.back().position == doctest::Approx(250.0 * 2 + 1539.9));
  try {
    (void)f.stack(2, f.quartz).walkoff_timeline(1000.0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::birth_outside_crystal);
  }
}

TEST_CASE("stack validation") {
  Fixture f;
  CHECK_THROWS_AS(Superlattice({}, f.cfg), Error);
  CHECK_THROWS_AS(Superlattice({f.quartz}, f.cfg), Error);
  Segment zero = f.quartz;
  zero.length = 0.0;
  CHECK_THROWS_AS(Superlattice({f.crystal, zero, f.crystal}, f.cfg), Error);
}
