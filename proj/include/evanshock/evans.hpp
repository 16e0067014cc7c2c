#pragma once

// Evans function evaluation by adjoint shooting. For each spectral point the
// forward sweep integrates Y' = (A - mu_- I) Y from -L- (growth factor
// removed, Y bounded) and the adjoint sweep integrates the growth-removed
// adjoint system from +L+ backward; the conserved conjugate pairing
// <Z, Y>, with removed factors restored at the meeting point, is the Evans
// value. Reported values carry a fixed 1/(1+lambda) gauge that removes the
// pairing's asymptotically linear growth in lambda, so image curves stay
// O(1); the gauge is nonvanishing and analytic on Re lambda >= 0 and leaves
// windings, zero counts and relative differences unchanged.
//
// Asymptotic initializations are tracked along the contour: the minus-side
// unstable mode by discrete Kato continuation (projector transport with a
// second-order midpoint rescale), the plus-side adjoint mode by the
// pointwise largest-entry-normalized eigenvector section, which converges as
// v+ -> 0 to the exactly known limiting direction
// V~1 = (0, 1, (1+conj(lambda))^-1) with matching scale. Both schemes are
// selectable per side.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evanshock/eigensystem.hpp"
#include "evanshock/linalg3.hpp"
#include "evanshock/ode.hpp"
#include "evanshock/shock.hpp"

namespace evanshock {

enum class TrackSide { minus, plus_adjoint };
enum class TrackScheme { kato_continuation, pointwise_eigenvector };

inline const char* to_string(TrackScheme s) {
  return s == TrackScheme::kato_continuation ? "kato_continuation" : "pointwise_eigenvector";
}

struct BranchFlipError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModeSample {
  cplx lambda;
  cplx mu;        // tracked eigenvalue of the side's matrix
  Vec3 vec;       // initialization direction at the truncation boundary
  double angle;   // angle to the previous sample's direction (0 for the first)
};

struct ModeTrack {
  TrackSide side = TrackSide::minus;
  TrackScheme scheme = TrackScheme::kato_continuation;
  std::vector<ModeSample> samples;
};

namespace detail {

// Angle between two directions under the conjugate pairing; a branch flip
// shows up as a large phase of the pairing, not of its modulus.
inline double direction_angle(const Vec3& a, const Vec3& b) {
  const double na = norm2(a), nb = norm2(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double re = std::real(dot_conj(a, b)) / (na * nb);
  return std::acos(std::min(1.0, std::max(-1.0, re)));
}

// Side-specific tracked eigenvalue continuation.
class MinusTracker {
 public:
  explicit MinusTracker(const EigenSystem& sys, double split_factor)
      : sys_(sys), split_factor_(split_factor) {}

  Mat3 matrix(cplx lambda) const { return sys_.at_minus(lambda); }

  cplx seed(cplx lambda) const {
    const auto c = char_coeffs(1.0, lambda, sys_.params);
    const auto roots = cubic_roots(c[0], c[1], c[2]);
    const double tol = splitting_tolerance(lambda, split_factor_);
    int n = 0;
    cplx mu;
    for (const auto& r : roots)
      if (r.real() > tol) {
        ++n;
        mu = r;
      }
    if (n != 1)
      throw DegenerateSpectrumError("continue_modes: seed unstable dimension != 1", lambda);
    return mu;
  }

  cplx advance(cplx lambda, cplx mu_prev) const {
    const auto c = char_coeffs(1.0, lambda, sys_.params);
    const auto roots = cubic_roots(c[0], c[1], c[2]);
    int best = 0;
    double d0 = std::abs(roots[0] - mu_prev);
    for (int i = 1; i < 3; ++i) {
      const double d = std::abs(roots[i] - mu_prev);
      if (d < d0) {
        d0 = d;
        best = i;
      }
    }
    const double tol = splitting_tolerance(lambda, split_factor_);
    for (int i = 0; i < 3; ++i)
      if (i != best && std::abs(roots[i] - roots[best]) < tol)
        throw DegenerateSpectrumError("continue_modes: tracked minus mode collides", lambda);
    return roots[best];
  }

 private:
  const EigenSystem& sys_;
  double split_factor_;
};

// Plus-side adjoint mode: tracked eigenvalue is -conj(mu3) where mu3 is the
// slow unstable root of A+. The slow pair is resolved as the roots of the
// deflated quadratic; branch continuity is kept on the discriminant square
// root, which is analytic and nonvanishing on the indented contour.
class PlusAdjointTracker {
 public:
  explicit PlusAdjointTracker(const EigenSystem& sys, double split_factor)
      : sys_(sys), split_factor_(split_factor) {}

  Mat3 matrix(cplx lambda) const {
    const Mat3 ap = sys_.at_plus(lambda);
    Mat3 m = adjoint(ap);
    for (auto& row : m)
      for (auto& e : row) e = -e;
    return m;
  }

  cplx seed(cplx lambda) {
    const SlowPairPlus sp = slow_pair_plus(lambda, sys_.params);
    w_ = std::sqrt(sp.sum * sp.sum - 4.0 * sp.prod);
    cplx mu3 = 0.5 * (sp.sum + w_);
    if (mu3.real() < 0.0) {
      w_ = -w_;
      mu3 = 0.5 * (sp.sum + w_);
    }
    const double tol = splitting_tolerance(lambda, split_factor_);
    if (!(mu3.real() > tol))
      throw DegenerateSpectrumError("continue_modes: seed slow splitting degenerate", lambda);
    return -std::conj(mu3);
  }

  cplx advance(cplx lambda, cplx /*mu_prev*/) {
    const SlowPairPlus sp = slow_pair_plus(lambda, sys_.params);
    cplx w = std::sqrt(sp.sum * sp.sum - 4.0 * sp.prod);
    if (std::abs(w - w_) > std::abs(w + w_)) w = -w;
    w_ = w;
    const double tol = splitting_tolerance(lambda, split_factor_);
    if (std::abs(w) < tol)
      throw DegenerateSpectrumError("continue_modes: slow pair collides on contour", lambda);
    return -std::conj(0.5 * (sp.sum + w));
  }

 private:
  const EigenSystem& sys_;
  double split_factor_;
  cplx w_{};
};

template <class Tracker>
ModeTrack run_track(std::span<const cplx> contour, Tracker&& tr, TrackSide side,
                    TrackScheme scheme) {
  ModeTrack out;
  out.side = side;
  out.scheme = scheme;
  if (contour.empty()) return out;

  cplx mu = tr.seed(contour[0]);
  Vec3 r = eigvec(tr.matrix(contour[0]), mu);
  out.samples.push_back({contour[0], mu, r, 0.0});

  for (std::size_t k = 1; k < contour.size(); ++k) {
    const cplx lam_mid = 0.5 * (contour[k - 1] + contour[k]);
    const cplx mu_mid = tr.advance(lam_mid, mu);
    const cplx mu_new = tr.advance(contour[k], mu_mid);
    const Mat3 m_new = tr.matrix(contour[k]);
    Vec3 r_new;
    if (scheme == TrackScheme::pointwise_eigenvector) {
      r_new = eigvec(m_new, mu_new);
    } else {
      const Vec3 rp = null_vector(m_new, mu_new);
      const Vec3 ln = left_eigvec(m_new, mu_new);
      const cplx den = dot_bilinear(ln, rp);
      if (std::abs(den) < 1e-14 * norm2(ln) * norm2(rp))
        throw BranchFlipError("continue_modes: projector ill-conditioned along contour");
      const Vec3 cand = (dot_bilinear(ln, r) / den) * rp;
      const Vec3 lm = left_eigvec(tr.matrix(lam_mid), mu_mid);
      const cplx dc = dot_bilinear(lm, cand);
      if (std::abs(dc) < 1e-14 * norm2(lm) * norm2(cand))
        throw BranchFlipError("continue_modes: midpoint rescale ill-conditioned");
      r_new = (dot_bilinear(lm, r) / dc) * cand;
    }
    const double ang = direction_angle(r, r_new);
    if (scheme == TrackScheme::kato_continuation && !(ang < 1.5707963267948966)) {
      std::ostringstream os;
      os << "continue_modes: branch flip (angle " << ang << ") at sample " << k;
      throw BranchFlipError(os.str());
    }
    out.samples.push_back({contour[k], mu_new, r_new, ang});
    mu = mu_new;
    r = r_new;
  }
  return out;
}

}  // namespace detail

inline ModeTrack continue_modes(std::span<const cplx> contour, const EigenSystem& sys,
                                TrackSide side,
                                TrackScheme scheme = TrackScheme::kato_continuation,
                                double split_factor = 1e-9) {
  if (side == TrackSide::minus)
    return detail::run_track(contour, detail::MinusTracker(sys, split_factor), side, scheme);
  if (sys.is_limiting()) {
    // Exact analytic section: the limiting adjoint eigenvalue is a Jordan
    // double zero, whose eigendirection V~1 is known in closed form; its Kato
    // transport preserves the unit second component, so the closed form is
    // already the continued section.
    ModeTrack out;
    out.side = side;
    out.scheme = scheme;
    Vec3 prev{};
    for (std::size_t k = 0; k < contour.size(); ++k) {
      const cplx lb = std::conj(contour[k]);
      const Vec3 v{cplx(0.0), cplx(1.0), 1.0 / (1.0 + lb)};
      const double ang = (k == 0) ? 0.0 : detail::direction_angle(prev, v);
      out.samples.push_back({contour[k], cplx(0.0), v, ang});
      prev = v;
    }
    return out;
  }
  return detail::run_track(contour, detail::PlusAdjointTracker(sys, split_factor), side, scheme);
}

struct EvansConfig {
  double l_minus = 20.0;
  double l_plus = 20.0;
  double rtol = 1e-8;
  double atol = 1e-10;
  double meeting_point = 0.0;
  double profile_tol = 1e-10;
  double endpoint_tol = 1e-6;
  double split_factor = 1e-9;
  Centering centering = Centering::midpoint;
  TrackScheme minus_scheme = TrackScheme::kato_continuation;
  TrackScheme adjoint_scheme = TrackScheme::pointwise_eigenvector;
};

struct EvansValue {
  cplx lambda;
  cplx d;
  double meeting_point = 0.0;
  double conservation_defect = 0.0;
  std::int64_t steps = 0;
  double rtol = 0.0;
};

struct EvansError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline EvansValue evans_at(cplx lambda, const EigenSystem& sys, const ProfileSolution* profile,
                           const EvansConfig& cfg, const Vec3& init_minus, cplx mu_minus,
                           const Vec3& init_plus, cplx nu_plus) {
  const double lm = cfg.l_minus, lp = cfg.l_plus, mp = cfg.meeting_point;
  if (!(mp > -lm) || !(mp + 1.0 <= lp))
    throw EvansError("evans_at: meeting point must satisfy -L- < x0 and x0+1 <= L+");
  const bool limiting = sys.is_limiting();
  if (!limiting && profile == nullptr)
    throw EvansError("evans_at: finite-Mach evaluation requires a profile");
  const ShockParams& p = sys.params;

  OdeStats stats;

  // Forward sweep: state (Y, w) with w = ln(1 - v), the log deviation from
  // the left endstate. The log form keeps the tail's relative accuracy under
  // the integrator's mixed error norm; a raw deviation of ~1e-14 would be
  // flushed by the absolute tolerance and translate the whole profile.
  const auto fwd = [&](double x, const State<4>& y) -> State<4> {
    double v, f;
    if (limiting) {
      v = limiting_profile(x);
      f = 2.0 * v - 1.0;
    } else {
      v = 1.0 - std::exp(y[3].real());
      f = f_of_v(v, p);
    }
    const cplx lv = lambda * v;
    const cplx d3 = cplx(f, 0.0) - lambda - mu_minus;
    State<4> out;
    out[0] = -mu_minus * y[0] + lambda * y[1] + y[2];
    out[1] = -mu_minus * y[1] + y[2];
    out[2] = lv * (y[0] + y[1]) + d3 * y[2];
    out[3] = limiting ? cplx(0.0) : cplx(-detail::log_slope_left(y[3].real(), p), 0.0);
    return out;
  };

  State<4> y = {init_minus[0], init_minus[1], init_minus[2],
                cplx(limiting ? 0.0 : std::log(profile->deviation_left()), 0.0)};
  y = integrate<4>(fwd, -lm, mp, y, cfg.rtol, cfg.atol, &stats);
  const Vec3 y_mp = {y[0], y[1], y[2]};
  y = integrate<4>(fwd, mp, mp + 1.0, y, cfg.rtol, cfg.atol, &stats);
  const Vec3 y_mp1 = {y[0], y[1], y[2]};

  // Backward adjoint sweep in s = -x: state (Z, m) with m = ln(v - v+).
  const auto bwd = [&](double s, const State<4>& z) -> State<4> {
    const double x = -s;
    double v, f;
    double dl = 0.0;
    if (limiting) {
      v = limiting_profile(x);
      f = 2.0 * v - 1.0;
    } else {
      dl = std::exp(z[3].real());
      v = p.v_plus + dl;
      f = f_dev_right(dl, p);
    }
    // dZ/ds = (A^H + nu I) Z with A = A(v, lambda).
    const cplx clv = std::conj(lambda) * v;
    const cplx d3 = cplx(f, 0.0) - std::conj(lambda);
    State<4> out;
    out[0] = nu_plus * z[0] + clv * z[2];
    out[1] = std::conj(lambda) * z[0] + nu_plus * z[1] + clv * z[2];
    out[2] = z[0] + z[1] + (d3 + nu_plus) * z[2];
    out[3] = limiting ? cplx(0.0) : cplx(-detail::log_slope_right(z[3].real(), p), 0.0);
    return out;
  };

  State<4> z = {init_plus[0], init_plus[1], init_plus[2],
                cplx(limiting ? 0.0 : std::log(profile->deviation_right()), 0.0)};
  z = integrate<4>(bwd, -lp, -(mp + 1.0), z, cfg.rtol, cfg.atol, &stats);
  const Vec3 z_mp1 = {z[0], z[1], z[2]};
  z = integrate<4>(bwd, -(mp + 1.0), -mp, z, cfg.rtol, cfg.atol, &stats);
  const Vec3 z_mp = {z[0], z[1], z[2]};

  // Restore removed growth factors; P(x) is the x-independent pairing.
  const cplx rate = mu_minus + std::conj(nu_plus);
  const cplx p0 = std::exp(rate * mp) * dot_conj(z_mp, y_mp);
  const cplx p1 = std::exp(rate * (mp + 1.0)) * dot_conj(z_mp1, y_mp1);

  EvansValue out;
  out.lambda = lambda;
  out.d = p0 / (1.0 + lambda);  // gauge
  out.meeting_point = mp;
  out.conservation_defect =
      (std::abs(p0) > 0.0) ? std::abs(p1 - p0) / std::abs(p0)
                           : std::numeric_limits<double>::infinity();
  out.steps = stats.steps;
  out.rtol = cfg.rtol;
  if (!std::isfinite(std::abs(out.d)))
    throw EvansError("evans_at: non-finite Evans value (growth removal or domain)");
  return out;
}

inline std::vector<EvansValue> evans_on_contour(std::span<const cplx> contour,
                                                const EigenSystem& sys, const EvansConfig& cfg,
                                                const ProfileSolution* profile = nullptr) {
  std::vector<EvansValue> out;
  if (contour.empty()) return out;

  ProfileSolution local_profile;
  const ProfileSolution* prof = profile;
  if (!sys.is_limiting() && prof == nullptr) {
    local_profile = solve_profile(sys.params, cfg.centering,
                                  ProfileDomain{cfg.l_minus, cfg.l_plus}, cfg.profile_tol,
                                  cfg.endpoint_tol);
    prof = &local_profile;
  }

  const ModeTrack minus =
      continue_modes(contour, sys, TrackSide::minus, cfg.minus_scheme, cfg.split_factor);
  const ModeTrack plus =
      continue_modes(contour, sys, TrackSide::plus_adjoint, cfg.adjoint_scheme, cfg.split_factor);

  out.reserve(contour.size());
  std::string failures;
  for (std::size_t k = 0; k < contour.size(); ++k) {
    try {
      out.push_back(evans_at(contour[k], sys, prof, cfg, minus.samples[k].vec,
                             minus.samples[k].mu, plus.samples[k].vec, plus.samples[k].mu));
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "[" << k << "] " << e.what() << "; ";
      failures += os.str();
    }
  }
  if (!failures.empty()) throw EvansError("evans_on_contour: " + failures);
  return out;
}

}  // namespace evanshock
