#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "crwave/emitter.hpp"
#include "crwave/quadrature.hpp"

using namespace crwave::emitter;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double e_val = std::numbers::e;
}

TEST_CASE("adaptive quadrature integrates smooth and kinked functions") {
  const double s = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  REQUIRE_THAT(s, WithinAbs(2.0, 1e-10));

  const double p =
      integrate_with_breakpoints([](double x) { return std::abs(x - 0.3); }, -1.0, 1.0, {0.3});
  REQUIRE_THAT(p, WithinAbs((1.3 * 1.3 + 0.7 * 0.7) / 2.0, 1e-10));

  REQUIRE_THAT(integrate([](double) { return 1.0; }, 2.0, 2.0), WithinAbs(0.0, 0.0));
  const double rev = integrate([](double x) { return x; }, 1.0, 0.0);
  REQUIRE_THAT(rev, WithinAbs(-0.5, 1e-12));
}

TEST_CASE("emission ramp meets its plateau continuously") {
  REQUIRE_THAT(profile_emit(0.2, 40.0, 1.0, 40.0), WithinAbs(0.2, 0.0));
  REQUIRE_THAT(profile_emit(0.2, 40.0, 1.0, 500.0), WithinAbs(0.2, 0.0));
  REQUIRE_THAT(profile_emit(0.2, 40.0, 1.0, 30.0), WithinAbs(0.06701732193875391, 1e-15));
  REQUIRE_THAT(profile_emit(0.2, 40.0, 1.0, -400.0), WithinAbs(0.0, 1e-8));

  double prev = 0.0;
  for (double t = -100.0; t <= 40.0; t += 0.5) {
    const double g = profile_emit(0.2, 40.0, 1.0, t);
    REQUIRE(g >= prev);
    prev = g;
  }
}

TEST_CASE("absorption ramp is the time mirror of emission") {
  const double g_max = 0.2, t_m = 40.0, t_0 = 100.0, v = 1.0;
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> dist(0.0, 300.0);
  for (int i = 0; i < 200; ++i) {
    const double s = dist(rng);
    REQUIRE_THAT(profile_absorb(g_max, t_m, t_0, v, t_m + t_0 + s),
                 WithinAbs(profile_emit(g_max, t_m, v, t_m - s), 1e-12));
  }
  REQUIRE_THAT(profile_absorb(g_max, t_m, t_0, v, t_m + t_0), WithinAbs(g_max, 0.0));
  REQUIRE_THAT(profile_absorb(g_max, t_m, t_0, v, 1e6), WithinAbs(0.0, 1e-12));
}

TEST_CASE("profile objects dispatch to the ramp functions") {
  const auto c = CouplingProfile::constant(0.3);
  REQUIRE_THAT(c.value(-5.0), WithinAbs(0.3, 0.0));
  REQUIRE(c.switch_times().empty());

  const auto em = CouplingProfile::shaped_emit(0.2, 40.0, 1.0);
  REQUIRE(em.value(25.0) == profile_emit(0.2, 40.0, 1.0, 25.0));
  REQUIRE(em.switch_times() == std::vector<double>{40.0});
  REQUIRE_THAT(em.max_magnitude(), WithinAbs(0.2, 0.0));

  const auto ab = CouplingProfile::shaped_absorb(0.2, 40.0, 100.0, 1.0);
  REQUIRE(ab.value(170.0) == profile_absorb(0.2, 40.0, 100.0, 1.0, 170.0));
  REQUIRE(ab.switch_times() == std::vector<double>{140.0});

  REQUIRE_THROWS_AS(CouplingProfile::shaped_emit(0.2, -1.0, 1.0).validate(),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingProfile::shaped_emit(0.2, 40.0, 0.0).validate(),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(CouplingProfile::shaped_absorb(0.2, 40.0, -2.0, 1.0).validate(),
                    std::invalid_argument);
}

TEST_CASE("single-atom amplitude matches the constant-coupling closed form") {
  const auto g = CouplingProfile::constant(0.1);
  REQUIRE_THAT(analytic_b1(g, 1.0, 0.0).real(), WithinAbs(1.0, 0.0));
  // one amplitude lifetime: t = v / (2 g^2)
  const double t_life = 1.0 / (2.0 * 0.1 * 0.1);
  REQUIRE_THAT(analytic_b1(g, 1.0, t_life).real(), WithinAbs(1.0 / e_val, 1e-10));
  for (double t : {3.0, 17.0, 120.0})
    REQUIRE_THAT(analytic_b1(g, 1.0, t).real(), WithinAbs(std::exp(-0.02 * t), 1e-10));
  REQUIRE_THAT(analytic_b1(g, 1.0, 5.0).imag(), WithinAbs(0.0, 0.0));
}

TEST_CASE("shaped emission releases half the excitation by the ramp midpoint") {
  const auto g = CouplingProfile::shaped_emit(0.2, 40.0, 1.0);
  const double b1 = analytic_b1(g, 1.0, 40.0).real();
  REQUIRE_THAT(b1 * b1, WithinAbs(0.5004157347018022, 1e-9));
}

TEST_CASE("two-atom amplitude obeys the retardation step") {
  EmitterPair pair;
  pair.l1 = 50;
  pair.l2 = 150;
  pair.g1 = CouplingProfile::constant(0.1);
  pair.g2 = CouplingProfile::constant(0.1);
  pair.v_g = 1.0;
  REQUIRE_THAT(pair.t0(), WithinAbs(100.0, 0.0));
  REQUIRE_THAT(analytic_b2(pair, 50.0).real(), WithinAbs(0.0, 0.0));
  REQUIRE_THAT(analytic_b2(pair, 100.0).real(), WithinAbs(0.0, 0.0));
}

TEST_CASE("constant-coupling absorption amplitudes match closed forms") {
  EmitterPair pair;
  pair.l1 = 50;
  pair.l2 = 150;
  pair.v_g = 1.0;

  SECTION("unequal couplings") {
    pair.g1 = CouplingProfile::constant(0.1);
    pair.g2 = CouplingProfile::constant(0.2);
    REQUIRE_THAT(analytic_b2(pair, 150.0).real(), WithinAbs(-0.4660850697102774, 1e-13));
  }
  SECTION("equal couplings") {
    pair.g1 = CouplingProfile::constant(0.1);
    pair.g2 = CouplingProfile::constant(0.1);
    REQUIRE_THAT(analytic_b2(pair, 150.0).real(), WithinAbs(-0.7357588823428846, 1e-13));
    const double b2 = analytic_b2(pair, 150.0).real();
    REQUIRE_THAT(b2 * b2, WithinAbs(4.0 / (e_val * e_val), 1e-12));
  }
  SECTION("continuity across equal couplings") {
    pair.g1 = CouplingProfile::constant(0.1);
    pair.g2 = CouplingProfile::constant(0.1 * (1.0 + 1e-4));
    const double near = analytic_b2(pair, 150.0).real();
    pair.g2 = CouplingProfile::constant(0.1);
    const double at = analytic_b2(pair, 150.0).real();
    REQUIRE_THAT(near, WithinAbs(at, 1e-6));
  }
}

TEST_CASE("nested quadrature path reduces to the closed form for flat ramps") {
  // ramps whose shaping lies outside the observation window behave as
  // constant couplings but exercise the general integration path
  EmitterPair pair;
  pair.l1 = 50;
  pair.l2 = 150;
  pair.v_g = 1.0;
  pair.g1 = CouplingProfile::shaped_emit(0.1, 1e-9, 1.0);
  pair.g2 = CouplingProfile::shaped_absorb(0.1, 1.0, 1e9, 1.0);
  const double general = analytic_b2(pair, 150.0).real();
  REQUIRE_THAT(general, WithinAbs(-0.7357588823428846, 1e-8));
}

TEST_CASE("matched shaped ramps transfer nearly all of the excitation") {
  EmitterPair pair;
  pair.l1 = 50;
  pair.l2 = 150;
  pair.v_g = 1.0;
  pair.g1 = CouplingProfile::shaped_emit(0.2, 40.0, 1.0);
  pair.g2 = CouplingProfile::shaped_absorb(0.2, 40.0, 100.0, 1.0);
  const double b2 = analytic_b2(pair, 280.0).real();
  REQUIRE_THAT(b2 * b2, WithinAbs(0.999169221269843, 1e-6));
  REQUIRE(b2 < 0.0);
}

TEST_CASE("absorption peak location and height") {
  const auto p = peak_absorption(0.1, 1.0, 100.0);
  REQUIRE_THAT(p.t_peak, WithinAbs(150.0, 1e-12));
  REQUIRE_THAT(p.value, WithinAbs(0.5413411329464508, 1e-15));

  const auto fast = peak_absorption(0.2, 1.0, 100.0);
  REQUIRE_THAT(fast.t_peak - 100.0, WithinAbs((p.t_peak - 100.0) / 4.0, 1e-12));
  REQUIRE_THAT(fast.value, WithinAbs(p.value, 0.0));
  REQUIRE_THROWS_AS(peak_absorption(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("atomic mirror reflectance is a unit-height lorentzian") {
  const double gamma = 0.4;
  REQUIRE_THAT(lorentzian_reflection(0.0, gamma), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(lorentzian_reflection(gamma, gamma), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(lorentzian_reflection(3.0 * gamma, gamma), WithinAbs(0.1, 1e-15));

  double prev = 1.0;
  for (double d = 0.1; d <= 5.0; d += 0.1) {
    const double r = lorentzian_reflection(d, gamma);
    REQUIRE(r >= 0.0);
    REQUIRE(r <= 1.0);
    REQUIRE(r < prev);
    prev = r;
  }
  REQUIRE_THROWS_AS(lorentzian_reflection(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("rabi frequency of the mirrored probe atom") {
  REQUIRE_THAT(rabi_prediction(0.1), WithinAbs(0.2, 1e-15));
  REQUIRE_THROWS_AS(rabi_prediction(-0.1), std::invalid_argument);
}

TEST_CASE("cavity decay rate from bounce statistics") {
  REQUIRE_THAT(mirror_cavity_kappa(1.0, 2.0, 1.0), WithinAbs(0.0, 0.0));
  REQUIRE_THAT(mirror_cavity_kappa(1.0 / e_val, 1.0, 1.0), WithinAbs(1.0, 1e-15));
  REQUIRE_THAT(mirror_cavity_kappa(0.9, 2.0, 1.0), WithinAbs(0.05268025782891314, 1e-15));
  REQUIRE_THROWS_AS(mirror_cavity_kappa(0.0, 2.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(mirror_cavity_kappa(1.1, 2.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(mirror_cavity_kappa(0.9, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("emitter pair validation") {
  EmitterPair pair;
  pair.l1 = 5;
  pair.l2 = 6;
  pair.g1 = CouplingProfile::constant(0.1);
  pair.g2 = CouplingProfile::constant(0.1);
  REQUIRE_THROWS_AS(pair.validate(), std::invalid_argument);
  pair.l2 = 7;
  REQUIRE_NOTHROW(pair.validate());
  pair.v_g = -1.0;
  REQUIRE_THROWS_AS(pair.validate(), std::invalid_argument);
}
