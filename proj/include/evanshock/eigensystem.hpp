#pragma once

// Variable-coefficient matrices of the integrated eigenvalue problem,
//
//     W' = A(x, lambda) W,   A = [ 0        lambda    1            ]
//                                [ 0        0         1            ]
//                                [ lam v    lam v     f(v) - lam   ],
//
// their asymptotic limits at +-infinity, eigen-decompositions classified by
// real part, the adjoint decaying direction at +infinity, and the static
// triangularization fixed point for the plus-side slow/fast splitting.
//
// The pressureless closure (gamma = 0, a = 0) makes every formula below
// reduce to the limiting system; no separate code path is needed except for
// the exactly known plus-side data of the limiting matrix.

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "evanshock/linalg3.hpp"
#include "evanshock/shock.hpp"

namespace evanshock {

struct DegenerateSpectrumError : std::runtime_error {
  cplx lambda;
  DegenerateSpectrumError(const std::string& what, cplx lam)
      : std::runtime_error(what), lambda(lam) {}
};

// h(v) = -v^(gamma+1) + a (gamma-1) + (a+1) v^gamma.
inline double h_of_v(double v, const ShockParams& p) {
  return -std::pow(v, p.gamma + 1.0) + p.a * (p.gamma - 1.0) + (p.a + 1.0) * std::pow(v, p.gamma);
}

// sup over [v+, 1] of h(v)/v^gamma, attained at v = v+.
inline double h_over_vgamma_sup(const ShockParams& p) {
  if (p.limiting) return 1.0;
  return p.gamma * p.c_plus;
}

// f(v) = v - v^-gamma h(v) = 2v - a (gamma-1) v^-gamma - (a+1).
inline double f_of_v(double v, const ShockParams& p) {
  return 2.0 * v - p.a * (p.gamma - 1.0) * std::pow(v, -p.gamma) - (p.a + 1.0);
}

// The same coefficient assembled from v+ and gamma only.
inline double f_of_v_expanded(double v, const ShockParams& p) {
  if (p.limiting) return 2.0 * v - 1.0;
  const double r = 1.0 - std::pow(p.v_plus, p.gamma);
  const double c = (1.0 - p.v_plus) / r;
  return 2.0 * v - (p.gamma - 1.0) * c * std::pow(p.v_plus / v, p.gamma) -
         c * std::pow(p.v_plus, p.gamma) - 1.0;
}

// f in right-tail deviation form, accurate for v = v+ + d with d << v+.
inline double f_dev_right(double d, const ShockParams& p) {
  if (p.limiting) return 2.0 * d - 1.0;
  const double ratio = std::exp(-p.gamma * std::log1p(d / p.v_plus));  // (v+/v)^gamma
  return 2.0 * (p.v_plus + d) - (p.gamma - 1.0) * p.c_plus * ratio - (p.a + 1.0);
}

struct EigenSystem {
  enum class Kind { finite_mach, limiting };
  Kind kind = Kind::limiting;
  ShockParams params = ShockParams::limiting_gas();

  static EigenSystem finite(const ShockParams& p) { return {Kind::finite_mach, p}; }
  static EigenSystem limit() { return {Kind::limiting, ShockParams::limiting_gas()}; }
  bool is_limiting() const { return kind == Kind::limiting; }

  // Coefficient matrix at profile value v.
  Mat3 coeff(double v, cplx lambda) const {
    const cplx lv = lambda * v;
    const double f = f_of_v(v, params);
    return Mat3{{{cplx(0.0), lambda, cplx(1.0)},
                 {cplx(0.0), cplx(0.0), cplx(1.0)},
                 {lv, lv, cplx(f, 0.0) - lambda}}};
  }

  Mat3 at_minus(cplx lambda) const { return coeff(1.0, lambda); }
  Mat3 at_plus(cplx lambda) const { return coeff(params.v_plus, lambda); }
};

inline Mat3 matrix_A(double x, cplx lambda, const ProfileSolution& profile) {
  return EigenSystem::finite(profile.params()).coeff(profile(x), lambda);
}

inline Mat3 matrix_A0(double x, cplx lambda) {
  return EigenSystem::limit().coeff(limiting_profile(x), lambda);
}

// Characteristic polynomial of coeff(v, lambda):
//   mu^3 - (f - lam) mu^2 - 2 lam v mu - lam^2 v.
inline std::array<cplx, 3> char_coeffs(double v, cplx lambda, const ShockParams& p) {
  const cplx d = cplx(f_of_v(v, p), 0.0) - lambda;
  const cplx c = lambda * v;
  return {-d, -2.0 * c, -c * lambda};  // monic coefficients a2, a1, a0
}

inline double splitting_tolerance(cplx lambda, double factor = 1e-9) {
  return factor * (1.0 + std::abs(lambda));
}

// Plus-side fast root (Newton from the dominant diagonal entry) and the slow
// quadratic mu^2 - s mu + q by exact deflation; Vieta keeps the tiny product
// free of cancellation.
struct SlowPairPlus {
  cplx mu_fast;
  cplx sum;   // slow-pair sum, d - mu_fast
  cplx prod;  // slow-pair product, lam^2 v+ / mu_fast
};

inline SlowPairPlus slow_pair_plus(cplx lambda, const ShockParams& p) {
  const auto a = char_coeffs(p.v_plus, lambda, p);
  const cplx d = -a[0];
  cplx mu = d;
  for (int it = 0; it < 40; ++it) {
    const cplx f = ((mu + a[0]) * mu + a[1]) * mu + a[2];
    const cplx df = (3.0 * mu + 2.0 * a[0]) * mu + a[1];
    if (std::abs(df) == 0.0) break;
    const cplx step = f / df;
    mu -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(mu))) break;
  }
  return {mu, d - mu, -a[2] / mu};
}

// Asymptotic mode data at a single spectral point, classified by sign of the
// real part against the splitting tolerance.
struct AsymptoticData {
  Mat3 a_minus, a_plus;
  cplx mu_unstable_minus;
  Vec3 v_unstable_minus;
  std::array<cplx, 2> mu_stable_plus;   // [fast, slow]
  std::array<Vec3, 2> v_stable_plus;
  cplx mu_adjoint_plus;                 // eigenvalue of -A+^* on the decaying mode
  Vec3 adjoint_decaying_plus;
};

inline AsymptoticData asymptotic_modes(const EigenSystem& sys, cplx lambda,
                                       double split_factor = 1e-9) {
  const double tol = splitting_tolerance(lambda, split_factor);
  AsymptoticData out;
  out.a_minus = sys.at_minus(lambda);
  out.a_plus = sys.at_plus(lambda);

  // Minus side: unique unstable (Re > 0) mode.
  const auto cm = char_coeffs(1.0, lambda, sys.params);
  const auto roots_m = cubic_roots(cm[0], cm[1], cm[2]);
  int n_unstable = 0;
  for (const auto& r : roots_m)
    if (r.real() > tol) {
      ++n_unstable;
      out.mu_unstable_minus = r;
    }
  if (n_unstable != 1) {
    std::ostringstream os;
    os << "asymptotic_modes: minus-side unstable dimension " << n_unstable << " != 1 at lambda=("
       << lambda.real() << "," << lambda.imag() << ")";
    throw DegenerateSpectrumError(os.str(), lambda);
  }
  out.v_unstable_minus = eigvec(out.a_minus, out.mu_unstable_minus);

  if (sys.is_limiting()) {
    // A0+ has eigenvalues {0, 0, -1-lam}; the slow boundary direction V2 and
    // the fast stable mode V3 are imposed, the adjoint direction is exact.
    const cplx af = -1.0 - lambda;
    out.mu_stable_plus = {af, cplx(0.0)};
    out.v_stable_plus[0] = Vec3{(lambda / af + 1.0) / af, 1.0 / af, cplx(1.0)};
    out.v_stable_plus[1] = Vec3{cplx(1.0), cplx(0.0), cplx(0.0)};
    out.mu_adjoint_plus = cplx(0.0);
    const cplx lb = std::conj(lambda);
    out.adjoint_decaying_plus = Vec3{cplx(0.0), cplx(1.0), 1.0 / (1.0 + lb)};
    return out;
  }

  // Plus side: fast stable + slow stable/unstable pair.
  const SlowPairPlus sp = slow_pair_plus(lambda, sys.params);
  const auto slow = quadratic_roots_sum_prod(sp.sum, sp.prod);
  if (!(sp.mu_fast.real() < -tol)) {
    throw DegenerateSpectrumError("asymptotic_modes: plus-side fast mode not stable", lambda);
  }
  cplx slow_stable, slow_unstable;
  const bool s0 = slow[0].real() < -tol, s1 = slow[1].real() < -tol;
  const bool u0 = slow[0].real() > tol, u1 = slow[1].real() > tol;
  if (s0 && u1) {
    slow_stable = slow[0];
    slow_unstable = slow[1];
  } else if (s1 && u0) {
    slow_stable = slow[1];
    slow_unstable = slow[0];
  } else {
    std::ostringstream os;
    os << "asymptotic_modes: plus-side slow splitting degenerate (Re = " << slow[0].real() << ", "
       << slow[1].real() << ") at lambda=(" << lambda.real() << "," << lambda.imag() << ")";
    throw DegenerateSpectrumError(os.str(), lambda);
  }
  out.mu_stable_plus = {sp.mu_fast, slow_stable};
  out.v_stable_plus[0] = eigvec(out.a_plus, sp.mu_fast);
  out.v_stable_plus[1] = eigvec(out.a_plus, slow_stable);
  out.mu_adjoint_plus = -std::conj(slow_unstable);
  // Conjugate-orthogonal complement of the stable subspace.
  const Vec3 cr = cross_bilinear(out.v_stable_plus[0], out.v_stable_plus[1]);
  out.adjoint_decaying_plus =
      normalize_largest_entry({std::conj(cr[0]), std::conj(cr[1]), std::conj(cr[2])});
  return out;
}

// (sqrt(gamma) + 1/2)^2; all nonstable eigenvalues lie in
// Re(lam) + |Im(lam)| <= wedge_bound(gamma).
inline double wedge_bound(double gamma) {
  if (!(gamma >= 1.0)) throw std::domain_error("wedge_bound: gamma must be >= 1");
  const double s = std::sqrt(gamma) + 0.5;
  return s * s;
}

// Static triangularization of A+ by R+ = [I 0; lam v+ th 1]: th solves
//   th (aI - lam J) = -1^T + lam v+ (th 1) th,   a = f(v+) - lam.
struct ThetaPlus {
  cplx th0, th1;
  double residual;
  int iterations;
};

struct NonContractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline ThetaPlus triangularize_plus(const ShockParams& p, cplx lambda, double tol = 1e-14,
                                    int max_iter = 100) {
  const cplx a = cplx(p.limiting ? -1.0 : f_of_v(p.v_plus, p), 0.0) - lambda;
  // row * (aI - lam J)^-1 with J = [0 1; 0 0].
  const auto apply_minv = [&](cplx r0, cplx r1) -> std::array<cplx, 2> {
    return {r0 / a, r0 * lambda / (a * a) + r1 / a};
  };
  auto th = apply_minv(-1.0, -1.0);
  double res = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const cplx s = lambda * p.v_plus * (th[0] + th[1]);
    const auto next = apply_minv(-1.0 + s * th[0], -1.0 + s * th[1]);
    res = std::max(std::abs(next[0] - th[0]), std::abs(next[1] - th[1]));
    th = next;
    if (!std::isfinite(std::abs(th[0])) || !std::isfinite(std::abs(th[1])))
      throw NonContractionError("triangularize_plus: iterates diverged");
    if (res <= tol * (1.0 + std::max(std::abs(th[0]), std::abs(th[1]))))
      return {th[0], th[1], res, it};
  }
  throw NonContractionError("triangularize_plus: fixed point did not converge");
}

// Max |entry| of the (2,1) block of L+ A+ R+ after the transform; should be
// at fixed-point accuracy.
inline double triangularization_block21(const ShockParams& p, cplx lambda, const ThetaPlus& th) {
  const EigenSystem sys =
      p.limiting ? EigenSystem::limit() : EigenSystem::finite(p);
  const Mat3 ap = sys.at_plus(lambda);
  const cplx s0 = lambda * p.v_plus * th.th0, s1 = lambda * p.v_plus * th.th1;
  Mat3 r{{{cplx(1.0), cplx(0.0), cplx(0.0)},
          {cplx(0.0), cplx(1.0), cplx(0.0)},
          {s0, s1, cplx(1.0)}}};
  Mat3 l{{{cplx(1.0), cplx(0.0), cplx(0.0)},
          {cplx(0.0), cplx(1.0), cplx(0.0)},
          {-s0, -s1, cplx(1.0)}}};
  const Mat3 hat = mat_mul(l, mat_mul(ap, r));
  return std::max(std::abs(hat[2][0]), std::abs(hat[2][1]));
}

}  // namespace evanshock
