#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "evanshock/shock.hpp"

using namespace evanshock;

namespace {
constexpr double kGammaMono = 5.0 / 3.0;
// Frozen against an independent 40-digit evaluation of the closed forms.
constexpr double kA_53_01 = 0.019816853373845842;
constexpr double kH_half = -0.22845113279458047;  // H(0.5; gamma=5/3, v+=0.1)
constexpr double kA_53_1em3 = 9.990099900999010e-06;
}  // namespace

TEST_CASE("rankine_hugoniot_a basic values") {
  CHECK(rankine_hugoniot_a(1.0, 0.5) == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(rankine_hugoniot_a(kGammaMono, 0.1) == Catch::Approx(kA_53_01).epsilon(1e-13));
  CHECK(rankine_hugoniot_a(kGammaMono, 1e-3) == Catch::Approx(kA_53_1em3).epsilon(1e-12));
}

TEST_CASE("rankine_hugoniot_a weak-shock continuity at v+ = 1") {
  for (double g : {1.0, 1.4, kGammaMono, 2.5}) {
    const double d4 = std::abs(rankine_hugoniot_a(g, 1.0 - 1e-4) - 1.0 / g);
    const double d6 = std::abs(rankine_hugoniot_a(g, 1.0 - 1e-6) - 1.0 / g);
    CHECK(d4 < 2e-4);
    CHECK(d6 < 2e-6);
    CHECK(d6 < d4);
  }
}

TEST_CASE("rankine_hugoniot_a domain errors") {
  CHECK_THROWS_AS(rankine_hugoniot_a(kGammaMono, 0.0), std::domain_error);
  CHECK_THROWS_AS(rankine_hugoniot_a(kGammaMono, -0.1), std::domain_error);
  CHECK_THROWS_AS(rankine_hugoniot_a(kGammaMono, 2.0), std::domain_error);
  CHECK_THROWS_AS(rankine_hugoniot_a(0.5, 0.5), std::domain_error);
}

TEST_CASE("mach_number") {
  CHECK(mach_number(1.0, 1.0) == Catch::Approx(1.0).epsilon(1e-15));
  // Published table values carry ~0.5% rounding; the formula is exact.
  const double m2 = mach_number(kGammaMono, rankine_hugoniot_a(kGammaMono, 1e-2));
  CHECK(std::abs(m2 - 36.1) < 0.05);
  const double m3 = mach_number(kGammaMono, rankine_hugoniot_a(kGammaMono, 1e-3));
  CHECK(std::abs(m3 - 244.0) / 244.0 < 0.01);
  const double m6 = mach_number(kGammaMono, rankine_hugoniot_a(kGammaMono, 1e-6));
  CHECK(std::abs(m6 - 7.71e4) / 7.71e4 < 0.01);
  CHECK(m6 == Catch::Approx(77459.70565).epsilon(1e-9));  // frozen formula value
  CHECK_THROWS_AS(mach_number(kGammaMono, 0.0), std::domain_error);
  CHECK_THROWS_AS(mach_number(kGammaMono, -1.0), std::domain_error);
}

TEST_CASE("ShockParams derived quantities") {
  const auto p = ShockParams::make(kGammaMono, 0.1);
  CHECK(p.a == Catch::Approx(kA_53_01).epsilon(1e-13));
  CHECK(p.mach == Catch::Approx(1.0 / std::sqrt(kGammaMono * p.a)).epsilon(1e-15));
  CHECK(p.c_plus == Catch::Approx(p.a * std::pow(0.1, -kGammaMono)).epsilon(1e-13));
  CHECK(p.mach >= 1.0);
  const auto lim = ShockParams::limiting_gas();
  CHECK(lim.a == 0.0);
  CHECK(lim.v_plus == 0.0);
  CHECK(std::isinf(lim.mach));
}

TEST_CASE("profile_rhs equilibria and value") {
  const auto p = ShockParams::make(kGammaMono, 0.1);
  CHECK(profile_rhs(1.0, p) == 0.0);
  CHECK(profile_rhs(0.1, p) == 0.0);
  CHECK(profile_rhs(0.5, p) == Catch::Approx(kH_half).epsilon(1e-14));
  CHECK_THROWS_AS(profile_rhs(0.0, p), std::domain_error);
  CHECK_THROWS_AS(profile_rhs(-1.0, p), std::domain_error);
}

TEST_CASE("profile slope chain inequality") {
  // v - gamma <= H(v,v+)/(v-v+) <= v - (1-v+) on (v+, 1).
  for (double g : {1.0, 1.5, kGammaMono, 2.0, 3.0}) {
    for (double vp : {1e-6, 1e-3, 0.1, 0.5, 0.9}) {
      const auto p = ShockParams::make(g, vp);
      for (int i = 1; i < 400; ++i) {
        const double v = vp + (1.0 - vp) * i / 400.0;
        const double q = profile_rhs(v, p) / (v - vp);
        CHECK(q >= v - g - 1e-10);
        CHECK(q <= v - (1.0 - vp) + 1e-10);
      }
    }
  }
}

TEST_CASE("limiting_profile closed form") {
  CHECK(limiting_profile(0.0) == Catch::Approx(0.5).epsilon(1e-16));
  CHECK(limiting_profile(60.0) < 1e-20);
  CHECK(1.0 - limiting_profile(-60.0) < 1e-20);
  // Complex-step derivative against the autonomous right-hand side.
  const double h = 1e-100;
  const std::complex<double> z(2.0, h);
  const double deriv = limiting_profile(z).imag() / h;
  const double v = limiting_profile(2.0);
  CHECK(std::abs(deriv - v * (v - 1.0)) < 1e-14);
}

TEST_CASE("solve_profile limiting case matches tanh formula") {
  const auto prof = solve_limiting_profile({20.0, 20.0}, 1e-10);
  CHECK(prof(0.0) == Catch::Approx(0.5).epsilon(1e-12));
  for (double x : {-18.0, -7.5, -1.0, 0.3, 2.0, 9.0, 17.0}) {
    CHECK(std::abs(prof(x) - limiting_profile(x)) < 1e-9);
  }
}

TEST_CASE("solve_profile midpoint centering and monotonicity") {
  const auto p = ShockParams::make(kGammaMono, 0.1);
  const auto prof = solve_profile(p, Centering::midpoint, {20.0, 20.0}, 1e-10);
  CHECK(prof(0.0) == Catch::Approx(0.55).epsilon(1e-12));
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ux(-20.0, 20.0);
  for (int i = 0; i < 60; ++i) {
    double x1 = ux(rng), x2 = ux(rng);
    if (x1 > x2) std::swap(x1, x2);
    if (x2 - x1 < 1e-6) continue;
    CHECK(prof(x1) > prof(x2));
  }
  CHECK(prof(-20.0) > 1.0 - 1e-6);
  CHECK(prof(20.0) < 0.1 + 1e-6);
  CHECK(prof.deviation_left() > 0.0);
  CHECK(prof.deviation_right() > 0.0);
}

TEST_CASE("solve_profile paper_decay centering satisfies the decay envelopes") {
  const double vp = 1.0 / 24.0;
  const auto p = ShockParams::make(kGammaMono, vp);
  const auto prof = solve_profile(p, Centering::paper_decay, {20.0, 20.0}, 1e-10);
  CHECK(prof(0.0) == Catch::Approx(vp + 1.0 / 12.0).epsilon(1e-12));
  for (int k = 0; k <= 20; ++k) {
    const double x = k;
    CHECK(prof(x) - vp <= (1.0 / 12.0) * std::exp(-0.75 * x) + 1e-12);
    CHECK(1.0 - prof(-x) <= 0.25 * std::exp((-x + 12.0) / 2.0) + 1e-12);
  }
}

TEST_CASE("solve_profile tolerance self-consistency") {
  const auto p = ShockParams::make(kGammaMono, 1e-3);
  const auto a = solve_profile(p, Centering::midpoint, {20.0, 20.0}, 1e-8);
  const auto b = solve_profile(p, Centering::midpoint, {20.0, 20.0}, 5e-9);
  for (double x : {-15.0, -3.0, 0.7, 5.0, 14.0}) CHECK(std::abs(a(x) - b(x)) < 1e-8);
}

TEST_CASE("solve_profile failure modes") {
  const auto p = ShockParams::make(kGammaMono, 0.95);
  CHECK_THROWS_AS(solve_profile(p, Centering::paper_decay, {20.0, 20.0}, 1e-10), ProfileError);
  const auto q = ShockParams::make(kGammaMono, 0.1);
  CHECK_THROWS_AS(solve_profile(q, Centering::midpoint, {2.0, 2.0}, 1e-10), ProfileError);
  CHECK_THROWS_AS(solve_profile(q, Centering::midpoint, {20.0, 20.0}, -1.0), ProfileError);
}

TEST_CASE("profile deviations are resolved far below endpoint rounding") {
  // The tails carry full relative precision; a plain v-representation would
  // round them away at the 1e-17 absolute level.
  const auto p = ShockParams::make(kGammaMono, 1e-1);
  const auto prof = solve_profile(p, Centering::midpoint, {28.0, 28.0}, 1e-10, 1e-5);
  CHECK(prof.deviation_right() < 1e-12);
  CHECK(prof.deviation_right() > 0.0);
  const auto prof20 = solve_profile(p, Centering::midpoint, {20.0, 20.0}, 1e-10);
  // Same trajectory: deviations at 20 must agree between the two solves.
  CHECK(std::exp(prof.log_dev_right(20.0)) ==
        Catch::Approx(prof20.deviation_right()).epsilon(1e-8));
}
