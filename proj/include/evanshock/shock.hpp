#pragma once

// Shock parameters, conserved-quantity relations and profile computation for
// the rescaled isentropic system
//
//     v' = H(v, v+) = v (v - 1 + a (v^-gamma - 1)),   v- = 1,
//
// with the pressure constant a fixed by the Rankine-Hugoniot relation and
// Mach number M = (gamma a)^(-1/2). The pressureless closure (v+ = 0, a = 0)
// is carried through the same code paths as the limiting gas.
//
// Near the endstates the profile is represented by its log-deviation
// (ln(v - v+) on the right, ln(1 - v) on the left). The deviation dynamics
// use the exact rearrangement
//
//     H(v+ + d) = (v+ + d) (d + c+ expm1(-gamma log1p(d/v+))),
//     c+ = (1 - v+)/(1 - v+^gamma) = a v+^-gamma,
//
// which keeps full relative accuracy in the tails; the naive formula loses
// the tail to cancellation and the induced translation noise is what breaks
// domain-robustness of downstream Evans values.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "evanshock/ode.hpp"

namespace evanshock {

struct ProfileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 1 - v+^gamma without cancellation: v+ - 1 is exact for v+ >= 1/2
// (Sterbenz), and below 1/2 the direct difference has no cancellation.
inline double one_minus_pow(double v_plus, double gamma) {
  if (v_plus >= 0.5) return -std::expm1(gamma * std::log1p(v_plus - 1.0));
  return 1.0 - std::pow(v_plus, gamma);
}

inline double rankine_hugoniot_a(double gamma, double v_plus) {
  if (!(gamma >= 1.0)) throw std::domain_error("rankine_hugoniot_a: gamma must be >= 1");
  if (!(v_plus > 0.0) || !(v_plus <= 1.0))
    throw std::domain_error("rankine_hugoniot_a: v_plus must lie in (0, 1]");
  const double e = 1.0 - v_plus;
  if (e < 1e-12) return (1.0 / gamma) * (1.0 - 0.5 * (gamma + 1.0) * e);  // weak-shock limit
  return std::pow(v_plus, gamma) * e / one_minus_pow(v_plus, gamma);
}

inline double mach_number(double gamma, double a) {
  if (!(gamma >= 1.0)) throw std::domain_error("mach_number: gamma must be >= 1");
  if (!(a > 0.0)) throw std::domain_error("mach_number: a must be positive");
  return 1.0 / std::sqrt(gamma * a);
}

struct ShockParams {
  double gamma = 0.0;
  double v_plus = 0.0;
  double a = 0.0;       // derived, Rankine-Hugoniot
  double mach = 0.0;    // derived, (gamma a)^-1/2
  double c_plus = 1.0;  // (1-v+)/(1-v+^gamma); equals a v+^-gamma
  bool limiting = false;

  static ShockParams make(double gamma, double v_plus) {
    ShockParams p;
    p.gamma = gamma;
    p.v_plus = v_plus;
    p.a = rankine_hugoniot_a(gamma, v_plus);
    p.mach = mach_number(gamma, p.a);
    const double e = 1.0 - v_plus;
    p.c_plus = (e < 1e-12) ? (1.0 / gamma) * (1.0 + 0.5 * (gamma - 1.0) * e)
                           : e / one_minus_pow(v_plus, gamma);
    p.limiting = false;
    return p;
  }

  // Pressureless (infinite-Mach) closure: v+ = 0, a = 0; all coefficient
  // formulas then reduce to the gamma-independent limiting system.
  static ShockParams limiting_gas() {
    ShockParams p;
    p.gamma = 0.0;
    p.v_plus = 0.0;
    p.a = 0.0;
    p.c_plus = 1.0;
    p.mach = std::numeric_limits<double>::infinity();
    p.limiting = true;
    return p;
  }
};

namespace detail {

// H(v+ + d), full relative accuracy in the right-tail deviation d > 0.
inline double rhs_dev_right(double d, const ShockParams& p) {
  if (p.limiting) return d * (d - 1.0);
  return (p.v_plus + d) * (d + p.c_plus * std::expm1(-p.gamma * std::log1p(d / p.v_plus)));
}

// H(1 - e), full relative accuracy in the left-tail deviation e > 0.
inline double rhs_dev_left(double e, const ShockParams& p) {
  if (p.limiting) return -(1.0 - e) * e;
  return (1.0 - e) * (-e + p.a * std::expm1(-p.gamma * std::log1p(-e)));
}

// d(ln d)/dx along the right tail.
inline double log_slope_right(double m, const ShockParams& p) {
  const double d = std::exp(m);
  if (p.limiting) return d - 1.0;
  return (p.v_plus + d) * (1.0 + p.c_plus * std::expm1(-p.gamma * std::log1p(d / p.v_plus)) / d);
}

// d(ln e)/ds with s = -x along the left tail.
inline double log_slope_left(double w, const ShockParams& p) {
  const double e = std::exp(w);
  if (p.limiting) return -(1.0 - e);
  return (1.0 - e) * (-1.0 + p.a * std::expm1(-p.gamma * std::log1p(-e)) / e);
}

}  // namespace detail

// H(v, v+). Endstates are exact equilibria.
inline double profile_rhs(double v, const ShockParams& p) {
  if (!(v > 0.0)) throw std::domain_error("profile_rhs: v must be positive");
  if (p.limiting) return v * (v - 1.0);
  if (v == p.v_plus || v == 1.0) return 0.0;
  return (v - p.v_plus <= 1.0 - v) ? detail::rhs_dev_right(v - p.v_plus, p)
                                   : detail::rhs_dev_left(1.0 - v, p);
}

// Explicit profile of the limiting system, v0(x) = (1 - tanh(x/2))/2.
// Templated so a complex-step derivative can be taken against it.
template <class T>
T limiting_profile(T x) {
  using std::tanh;
  return 0.5 * (1.0 - tanh(0.5 * x));
}

enum class Centering { midpoint, paper_decay };

inline const char* to_string(Centering c) {
  return c == Centering::midpoint ? "midpoint" : "paper_decay";
}

struct ProfileDomain {
  double l_minus = 20.0;
  double l_plus = 20.0;
};

// Monotone shock profile on [-L-, L+], evaluated on demand by re-integrating
// the log-deviation ODE from the nearest cached node. Immutable once built.
class ProfileSolution {
 public:
  const ShockParams& params() const { return params_; }
  Centering centering() const { return centering_; }
  const ProfileDomain& domain() const { return domain_; }
  double tol() const { return tol_; }
  double center_value() const { return v0_; }

  // 1 - v(-L-) and v(L+) - v+, to full relative accuracy.
  double deviation_left() const { return std::exp(ws_.back()); }
  double deviation_right() const { return std::exp(ms_.back()); }

  double operator()(double x) const {
    if (x >= 0.0) return params_.v_plus + std::exp(log_dev_right(x));
    return 1.0 - std::exp(log_dev_left(-x));
  }

  // ln(v(x) - v+) for x >= 0.
  double log_dev_right(double x) const {
    const std::size_t i = node_at_or_before(xs_, x);
    State<1> y = {cplx(ms_[i], 0.0)};
    y = integrate<1>([this](double, const State<1>& s) -> State<1> {
      return {cplx(detail::log_slope_right(s[0].real(), params_), 0.0)};
    }, xs_[i], x, y, ode_rtol_, ode_atol_);
    return y[0].real();
  }

  // ln(1 - v(-s)) for s >= 0.
  double log_dev_left(double s) const {
    const std::size_t i = node_at_or_before(ss_, s);
    State<1> y = {cplx(ws_[i], 0.0)};
    y = integrate<1>([this](double, const State<1>& st) -> State<1> {
      return {cplx(detail::log_slope_left(st[0].real(), params_), 0.0)};
    }, ss_[i], s, y, ode_rtol_, ode_atol_);
    return y[0].real();
  }

 private:
  friend ProfileSolution solve_profile(const ShockParams&, Centering, const ProfileDomain&, double,
                                       double);
  static std::size_t node_at_or_before(const std::vector<double>& xs, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return 0;
    return static_cast<std::size_t>(std::distance(xs.begin(), it)) - 1;
  }

  ShockParams params_;
  Centering centering_ = Centering::midpoint;
  ProfileDomain domain_;
  double tol_ = 1e-10;
  double v0_ = 0.5;
  double ode_rtol_ = 1e-12, ode_atol_ = 1e-12;
  std::vector<double> xs_, ms_;  // right side: x, ln(v - v+)
  std::vector<double> ss_, ws_;  // left side: s = -x, ln(1 - v)
};

inline ProfileSolution solve_profile(const ShockParams& params, Centering centering,
                                     const ProfileDomain& domain, double tol,
                                     double endpoint_tol = 1e-6) {
  if (!(tol > 0.0)) throw ProfileError("solve_profile: tol must be positive");
  if (!(domain.l_minus > 0.0) || !(domain.l_plus > 0.0))
    throw ProfileError("solve_profile: domain lengths must be positive");

  ProfileSolution sol;
  sol.params_ = params;
  sol.centering_ = centering;
  sol.domain_ = domain;
  sol.tol_ = tol;
  sol.v0_ = (centering == Centering::midpoint) ? 0.5 * (1.0 + params.v_plus)
                                               : params.v_plus + 1.0 / 12.0;
  if (!(sol.v0_ > params.v_plus) || !(sol.v0_ < 1.0))
    throw ProfileError("solve_profile: centering value outside (v+, 1)");
  sol.ode_rtol_ = std::max(tol * 1e-2, 1e-13);
  sol.ode_atol_ = sol.ode_rtol_;

  const double chunk = 0.25;
  try {
    // Right half: m = ln(v - v+), x in [0, L+].
    sol.xs_.push_back(0.0);
    sol.ms_.push_back(std::log(sol.v0_ - params.v_plus));
    for (double x = 0.0; x < domain.l_plus - 1e-12;) {
      const double xn = std::min(x + chunk, domain.l_plus);
      State<1> y = {cplx(sol.ms_.back(), 0.0)};
      y = integrate<1>([&params](double, const State<1>& s) -> State<1> {
        return {cplx(detail::log_slope_right(s[0].real(), params), 0.0)};
      }, x, xn, y, sol.ode_rtol_, sol.ode_atol_);
      sol.xs_.push_back(xn);
      sol.ms_.push_back(y[0].real());
      if (sol.ms_.back() >= *(sol.ms_.end() - 2))
        throw ProfileError("solve_profile: right deviation not strictly decreasing");
      x = xn;
    }
    // Left half: w = ln(1 - v), s = -x in [0, L-].
    sol.ss_.push_back(0.0);
    sol.ws_.push_back(std::log(1.0 - sol.v0_));
    for (double s = 0.0; s < domain.l_minus - 1e-12;) {
      const double sn = std::min(s + chunk, domain.l_minus);
      State<1> y = {cplx(sol.ws_.back(), 0.0)};
      y = integrate<1>([&params](double, const State<1>& st) -> State<1> {
        return {cplx(detail::log_slope_left(st[0].real(), params), 0.0)};
      }, s, sn, y, sol.ode_rtol_, sol.ode_atol_);
      sol.ss_.push_back(sn);
      sol.ws_.push_back(y[0].real());
      if (sol.ws_.back() >= *(sol.ws_.end() - 2))
        throw ProfileError("solve_profile: left deviation not strictly decreasing");
      s = sn;
    }
  } catch (const OdeError& e) {
    throw ProfileError(std::string("solve_profile: integrator failed: ") + e.what());
  }

  if (sol.deviation_right() > endpoint_tol || sol.deviation_left() > endpoint_tol)
    throw ProfileError("solve_profile: endpoint residual exceeds tolerance; enlarge the domain");
  return sol;
}

inline ProfileSolution solve_limiting_profile(const ProfileDomain& domain, double tol,
                                              Centering centering = Centering::midpoint,
                                              double endpoint_tol = 1e-6) {
  return solve_profile(ShockParams::limiting_gas(), centering, domain, tol, endpoint_tol);
}

}  // namespace evanshock
