#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "evanshock/eigensystem.hpp"

using namespace evanshock;
using Catch::Approx;

namespace {
constexpr double kGammaMono = 5.0 / 3.0;
// Frozen against an independent 40-digit evaluation.
constexpr double kH_half = 0.17694328449652019;   // h(0.5; 5/3, 0.1)
constexpr double kF_half = -0.061759911896969112;  // f(0.5; 5/3, 0.1)
constexpr double kWedge3 = 4.982050807568877;

std::array<cplx, 3> sorted_roots(std::array<cplx, 3> r) {
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}
}  // namespace

TEST_CASE("h_of_v values and closed-form supremum") {
  const auto p = ShockParams::make(kGammaMono, 0.1);
  CHECK(h_of_v(1.0, p) == Approx(p.a * p.gamma).margin(1e-15));
  CHECK(h_of_v(0.5, p) == Approx(kH_half).epsilon(1e-13));

  for (const auto& q : {ShockParams::make(kGammaMono, 0.1), ShockParams::make(2.0, 1e-3)}) {
    double grid_max = 0.0;
    const int n = 100000;
    for (int i = 0; i <= n; ++i) {
      const double v = q.v_plus + (1.0 - q.v_plus) * i / n;
      grid_max = std::max(grid_max, h_of_v(v, q) / std::pow(v, q.gamma));
    }
    const double closed = q.gamma * (1.0 - q.v_plus) / (1.0 - std::pow(q.v_plus, q.gamma));
    CHECK(grid_max == Approx(closed).epsilon(1e-8));
    CHECK(closed <= q.gamma + 1e-12);
    CHECK(h_over_vgamma_sup(q) == Approx(closed).epsilon(1e-12));
    // Supremum attained at the right endstate.
    CHECK(h_of_v(q.v_plus, q) / std::pow(q.v_plus, q.gamma) == Approx(closed).epsilon(1e-10));
  }
}

TEST_CASE("f_of_v values, gamma=1 reduction and limiting value") {
  const auto p1 = ShockParams::make(1.0, 0.3);
  for (double v : {0.35, 0.6, 0.95})
    CHECK(f_of_v(v, p1) == Approx(2.0 * v - (p1.v_plus + 1.0)).margin(1e-14));
  const auto p = ShockParams::make(kGammaMono, 0.1);
  CHECK(f_of_v(0.5, p) == Approx(kF_half).epsilon(1e-13));
  const auto lim = ShockParams::limiting_gas();
  CHECK(f_of_v(0.5, lim) == Approx(0.0).margin(1e-15));  // f0 at the profile midpoint
  // f(v+) <= 2 v+ - 1 <= -1/2 in the strong-shock regime.
  for (double g : {1.0, 1.5, kGammaMono, 2.5, 3.0}) {
    const auto q = ShockParams::make(g, 1e-3);
    CHECK(f_of_v(q.v_plus, q) <= 2.0 * q.v_plus - 1.0 + 1e-14);
    CHECK(f_of_v(q.v_plus, q) <= -0.5);
  }
}

TEST_CASE("f formula equivalence on a grid") {
  std::vector<double> gammas, vps;
  for (int i = 0; i < 10; ++i) gammas.push_back(1.0 + 2.0 * i / 9.0);
  for (int i = 0; i < 10; ++i) vps.push_back(std::pow(10.0, -6.0 + 5.9 * i / 9.0));
  for (double g : gammas)
    for (double vp : vps) {
      const auto p = ShockParams::make(g, vp);
      for (int i = 0; i <= 10; ++i) {
        const double v = vp + (1.0 - vp) * i / 10.0;
        if (v <= 0.0) continue;
        const double f1 = f_of_v(v, p), f2 = f_of_v_expanded(v, p);
        CHECK(std::abs(f1 - f2) <= 1e-12 * (1.0 + std::abs(f1)));
      }
    }
}

TEST_CASE("spectral gap under the fast/slow splitting") {
  // Re(f(v) - lambda) <= -1/2 for v <= 1/4 and Re lambda >= 0.
  for (double g : {1.0, kGammaMono, 3.0})
    for (double vp : {1e-6, 1e-3, 0.1}) {
      const auto p = ShockParams::make(g, vp);
      for (int i = 0; i <= 50; ++i) {
        const double v = vp + (0.25 - vp) * i / 50.0;
        if (v < vp) continue;
        CHECK(f_of_v(v, p) <= 2.0 * v - 1.0 + 1e-13);
        CHECK(f_of_v(v, p) <= -0.5 + 1e-13);
      }
    }
}

TEST_CASE("matrix assembly") {
  const auto p = ShockParams::make(kGammaMono, 0.1);
  const auto prof = solve_profile(p, Centering::midpoint, {20.0, 20.0}, 1e-10);
  const EigenSystem sys = EigenSystem::finite(p);

  SECTION("lambda = 0 stencil") {
    const Mat3 a = matrix_A(1.3, cplx(0.0), prof);
    CHECK(std::abs(a[0][0]) == 0.0);
    CHECK(std::abs(a[0][1]) == 0.0);
    CHECK(std::abs(a[1][0]) == 0.0);
    CHECK(std::abs(a[2][0]) == 0.0);
    CHECK(std::abs(a[2][1]) == 0.0);
    CHECK(a[0][2] == cplx(1.0));
    CHECK(a[2][2] == cplx(f_of_v(prof(1.3), p)));
  }
  SECTION("trace identity and conjugation symmetry at random points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-15.0, 15.0), ur(0.0, 5.0);
    for (int i = 0; i < 12; ++i) {
      const double x = ux(rng);
      const cplx lam(ur(rng), ur(rng) - 2.5);
      const Mat3 a = matrix_A(x, lam, prof);
      CHECK(std::abs(trace(a) - (cplx(f_of_v(prof(x), p)) - lam)) < 1e-12);
      const Mat3 ac = matrix_A(x, std::conj(lam), prof);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(std::abs(ac[r][c] - std::conj(a[r][c])) < 1e-14);
    }
  }
  SECTION("endstate substitution x -> -inf") {
    const Mat3 am = sys.at_minus(cplx(2.0, 1.0));
    const Mat3 af = matrix_A(-20.0, cplx(2.0, 1.0), prof);
    CHECK(mat_max_abs(Mat3{{{am[0][0] - af[0][0], am[0][1] - af[0][1], am[0][2] - af[0][2]},
                            {am[1][0] - af[1][0], am[1][1] - af[1][1], am[1][2] - af[1][2]},
                            {am[2][0] - af[2][0], am[2][1] - af[2][1], am[2][2] - af[2][2]}}}) <
          1e-7);
  }
}

TEST_CASE("limiting matrix endstates and the noncommuting limits") {
  const cplx lam(0.7, 1.1);
  const Mat3 ap = matrix_A0(50.0, lam);
  CHECK(std::abs(ap[2][0]) < 1e-20);
  CHECK(std::abs(ap[2][2] - (cplx(-1.0) - lam)) < 1e-12);
  const Mat3 am = matrix_A0(-50.0, lam);
  const Mat3 ref = EigenSystem::limit().at_minus(lam);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(am[r][c] - ref[r][c]) < 1e-12);
  // lim_{v+ -> 0} A(+inf) has (3,3) entry -gamma - lambda, not -1 - lambda.
  const auto p = ShockParams::make(kGammaMono, 1e-10);
  CHECK(f_of_v(p.v_plus, p) == Approx(-kGammaMono).epsilon(1e-6));
  // Pointwise limit A -> A0 at fixed (x, lambda).
  const auto prof6 = solve_profile(ShockParams::make(kGammaMono, 1e-6), Centering::midpoint,
                                   {20.0, 20.0}, 1e-10);
  const Mat3 a6 = matrix_A(1.0, lam, prof6);
  const Mat3 a0 = matrix_A0(1.0, lam);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(std::abs(a6[r][c] - a0[r][c]) < 1e-3);
}

TEST_CASE("limiting asymptotic eigenvalues match the closed forms") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int i = 0; i < 10; ++i) {
    const cplx lam(u(rng), u(rng) - 4.0);
    // A0+ : {0, 0, -1-lam}.
    const auto cp = char_coeffs(0.0, lam, ShockParams::limiting_gas());
    const auto rp = sorted_roots(cubic_roots(cp[0], cp[1], cp[2]));
    auto expected_p = sorted_roots({cplx(0.0), cplx(0.0), -1.0 - lam});
    for (int k = 0; k < 3; ++k) CHECK(std::abs(rp[k] - expected_p[k]) < 1e-10);
    // A0- : {-lam, (1 +- sqrt(1+4 lam))/2}.
    const auto cm = char_coeffs(1.0, lam, ShockParams::limiting_gas());
    const auto rm = sorted_roots(cubic_roots(cm[0], cm[1], cm[2]));
    const cplx s = std::sqrt(1.0 + 4.0 * lam);
    auto expected_m = sorted_roots({-lam, 0.5 * (1.0 + s), 0.5 * (1.0 - s)});
    for (int k = 0; k < 3; ++k) CHECK(std::abs(rm[k] - expected_m[k]) < 1e-10);
  }
  // lambda = 1: eigenvalues {-1, (1 +- sqrt 5)/2}.
  const auto c1 = char_coeffs(1.0, cplx(1.0), ShockParams::limiting_gas());
  const auto r1 = sorted_roots(cubic_roots(c1[0], c1[1], c1[2]));
  const double s5 = std::sqrt(5.0);
  auto e1 = sorted_roots({cplx(-1.0), cplx(0.5 * (1.0 + s5)), cplx(0.5 * (1.0 - s5))});
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r1[k] - e1[k]) < 1e-12);
}

TEST_CASE("asymptotic_modes limiting system") {
  const EigenSystem sys = EigenSystem::limit();
  for (cplx lam : {cplx(1.0), cplx(0.3, 2.0), cplx(0.0, -5.0), cplx(10.0)}) {
    const auto m = asymptotic_modes(sys, lam);
    // V2, V3, V~1 exactly as prescribed.
    CHECK(std::abs(m.v_stable_plus[1][0] - 1.0) < 1e-15);
    CHECK(std::abs(m.v_stable_plus[1][1]) < 1e-15);
    const cplx af = -1.0 - lam;
    CHECK(std::abs(m.v_stable_plus[0][1] - 1.0 / af) < 1e-14);
    CHECK(std::abs(m.v_stable_plus[0][2] - 1.0) < 1e-14);
    CHECK(std::abs(m.adjoint_decaying_plus[2] - 1.0 / (1.0 + std::conj(lam))) < 1e-14);
    // Conjugate orthogonality to the span of V2 and V3.
    CHECK(std::abs(dot_conj(m.adjoint_decaying_plus, m.v_stable_plus[0])) < 1e-13);
    CHECK(std::abs(dot_conj(m.adjoint_decaying_plus, m.v_stable_plus[1])) < 1e-13);
    // Unstable minus-side growth rate exceeds 1/2 on Re lambda >= 0.
    CHECK(m.mu_unstable_minus.real() > 0.5);
    CHECK(eig_residual(m.a_minus, m.mu_unstable_minus, m.v_unstable_minus) < 1e-11);
  }
}

TEST_CASE("asymptotic_modes finite system") {
  const cplx lam(1.0, 1.5);
  for (double vp : {1e-2, 1e-4, 1e-6}) {
    const auto p = ShockParams::make(kGammaMono, vp);
    const auto m = asymptotic_modes(EigenSystem::finite(p), lam);
    CHECK(m.mu_stable_plus[0].real() < 0.0);
    CHECK(m.mu_stable_plus[1].real() < 0.0);
    CHECK(m.mu_unstable_minus.real() > 0.0);
    // Adjoint direction annihilates the stable subspace and is an
    // eigenvector of -A+^H at the advertised eigenvalue.
    CHECK(std::abs(dot_conj(m.adjoint_decaying_plus, m.v_stable_plus[0])) < 1e-10);
    CHECK(std::abs(dot_conj(m.adjoint_decaying_plus, m.v_stable_plus[1])) < 1e-10);
    Mat3 madj = adjoint(m.a_plus);
    for (auto& row : madj)
      for (auto& e : row) e = -e;
    CHECK(eig_residual(madj, m.mu_adjoint_plus, m.adjoint_decaying_plus) < 1e-9);
    CHECK(m.mu_adjoint_plus.real() < 0.0);
  }
  // Slow stable eigenvector converges in direction to (1,0,0) as v+ -> 0.
  double prev_angle = 1e9;
  for (double vp : {1e-2, 1e-4, 1e-6}) {
    const auto m = asymptotic_modes(EigenSystem::finite(ShockParams::make(kGammaMono, vp)), lam);
    const Vec3& s = m.v_stable_plus[1];
    const double angle = std::acos(std::min(1.0, std::abs(s[0]) / norm2(s)));
    CHECK(angle < prev_angle);
    prev_angle = angle;
  }
  CHECK(prev_angle < 5e-3);
}

TEST_CASE("asymptotic_modes degenerate splitting is reported") {
  const auto p = ShockParams::make(kGammaMono, 1e-3);
  CHECK_THROWS_AS(asymptotic_modes(EigenSystem::finite(p), cplx(1e-12, 0.0)),
                  DegenerateSpectrumError);
}

TEST_CASE("wedge bound") {
  CHECK(wedge_bound(1.0) == Approx(2.25).epsilon(1e-15));
  CHECK(wedge_bound(3.0) == Approx(kWedge3).epsilon(1e-15));
  for (int i = 0; i <= 20; ++i) {
    const double g = 1.0 + 2.0 * i / 20.0;
    CHECK(wedge_bound(g) <= 10.0);  // radius-10 semicircle encloses the wedge
  }
  CHECK_THROWS_AS(wedge_bound(0.9), std::domain_error);
}

TEST_CASE("triangularize_plus") {
  SECTION("limiting closure solves in one step") {
    const auto lim = ShockParams::limiting_gas();
    const cplx lam(2.0, 1.0);
    const auto th = triangularize_plus(lim, lam);
    const cplx a = cplx(-1.0) - lam;
    CHECK(std::abs(th.th0 - (-1.0 / a)) < 1e-14);
    CHECK(std::abs(th.th1 - (-(lam / (a * a) + 1.0 / a))) < 1e-14);
    CHECK(th.iterations == 1);
  }
  SECTION("fixed point zeroes the (2,1) block") {
    const auto p = ShockParams::make(kGammaMono, 1e-3);
    const auto th = triangularize_plus(p, cplx(1.0));
    CHECK(triangularization_block21(p, cplx(1.0), th) < 1e-10);
  }
  SECTION("uniform bound over contour points, stable under v+ halving") {
    const double pi = 3.14159265358979323846;
    double mx1 = 0.0, mx2 = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double thth = -0.5 * pi + pi * k / 15.0;
      const cplx lam = 10.0 * std::exp(cplx(0.0, thth));
      const auto t1 = triangularize_plus(ShockParams::make(kGammaMono, 1e-3), lam);
      const auto t2 = triangularize_plus(ShockParams::make(kGammaMono, 5e-4), lam);
      mx1 = std::max(mx1, std::max(std::abs(t1.th0), std::abs(t1.th1)));
      mx2 = std::max(mx2, std::max(std::abs(t2.th0), std::abs(t2.th1)));
    }
    CHECK(mx1 < 10.0);
    CHECK(mx2 < 10.0);
    CHECK(std::abs(mx1 - mx2) < 0.5);
  }
  SECTION("non-contraction reported outside the small-v+ regime") {
    CHECK_THROWS_AS(triangularize_plus(ShockParams::make(kGammaMono, 0.9), cplx(0.1)),
                    NonContractionError);
  }
}

TEST_CASE("eigenvector normalization is deterministic") {
  const Vec3 v{cplx(0.5, 0.5), cplx(-2.0, 1.0), cplx(0.1)};
  const Vec3 n = normalize_largest_entry(v);
  CHECK(std::abs(n[1] - 1.0) < 1e-15);
  // Conjugating the input conjugates the output.
  const Vec3 vc{std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
  const Vec3 nc = normalize_largest_entry(vc);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(nc[i] - std::conj(n[i])) < 1e-15);
}

TEST_CASE("cubic and quadratic solvers recover random root sets") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx r1(u(rng), u(rng)), r2(u(rng), u(rng)), r3(u(rng), u(rng));
    // coefficients of (x-r1)(x-r2)(x-r3)
    const cplx a2 = -(r1 + r2 + r3), a1 = r1 * r2 + r1 * r3 + r2 * r3, a0 = -r1 * r2 * r3;
    auto roots = cubic_roots(a2, a1, a0);
    const double scale = 1.0 + std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
    // greedy matching is enough at these separations
    for (const cplx want : {r1, r2, r3}) {
      double best = 1e300;
      for (const auto& got : roots) best = std::min(best, std::abs(got - want));
      CHECK(best < 1e-9 * scale);
    }
    const auto q = quadratic_roots_sum_prod(r1 + r2, r1 * r2);
    const double e1 = std::min(std::abs(q[0] - r1), std::abs(q[0] - r2));
    const double e2 = std::min(std::abs(q[1] - r1), std::abs(q[1] - r2));
    CHECK(e1 < 1e-10 * scale);
    CHECK(e2 < 1e-10 * scale);
  }
}

TEST_CASE("limiting matrix conjugation symmetry at random points") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> ux(-12.0, 12.0), ur(0.0, 6.0), ui(-6.0, 6.0);
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng);
    const cplx lam(ur(rng), ui(rng));
    const Mat3 a = matrix_A0(x, lam);
    const Mat3 ac = matrix_A0(x, std::conj(lam));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) CHECK(std::abs(ac[r][c] - std::conj(a[r][c])) < 1e-14);
  }
}
