#pragma once

// Adaptive Dormand-Prince 5(4) integrator for small complex state vectors.
// Error control is per-component mixed absolute/relative; backward spans are
// handled by the caller (integrate in a negated independent variable).

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "evanshock/linalg3.hpp"

namespace evanshock {

struct OdeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OdeStats {
  std::int64_t steps = 0;
  std::int64_t rejected = 0;
};

template <std::size_t N>
using State = std::array<cplx, N>;

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, const State<N>& k) {
  State<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
  return r;
}

}  // namespace detail

// Integrates y' = f(x, y) from x0 to x1 (x1 > x0 or x1 < x0), returning y(x1).
// Throws OdeError when the tolerance cannot be met within the step budget.
template <std::size_t N, typename F>
State<N> integrate(F&& f, double x0, double x1, State<N> y, double rtol, double atol,
                   OdeStats* stats = nullptr, std::int64_t max_steps = 2000000) {
  if (x1 == x0) return y;
  const double dir = (x1 > x0) ? 1.0 : -1.0;
  const double span = std::abs(x1 - x0);

  // Dormand-Prince RK5(4)7M tableau.
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double x = x0;
  double h = dir * std::min(0.05, span);
  State<N> k1 = f(x, y);
  std::int64_t steps = 0, rejected = 0;

  while (dir * (x1 - x) > 0.0) {
    if (++steps > max_steps) throw OdeError("integrate: step budget exhausted");
    if (std::abs(h) < 1e-14 * (1.0 + std::abs(x)))
      throw OdeError("integrate: step size underflow (tolerance unreachable)");
    if (dir * (x + h - x1) > 0.0) h = x1 - x;

    const State<N> y2 = detail::axpy(y, h * a21, k1);
    const State<N> k2 = f(x + c2 * h, y2);
    State<N> y3 = y;
    for (std::size_t i = 0; i < N; ++i) y3[i] += h * (a31 * k1[i] + a32 * k2[i]);
    const State<N> k3 = f(x + c3 * h, y3);
    State<N> y4 = y;
    for (std::size_t i = 0; i < N; ++i) y4[i] += h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State<N> k4 = f(x + c4 * h, y4);
    State<N> y5 = y;
    for (std::size_t i = 0; i < N; ++i)
      y5[i] += h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State<N> k5 = f(x + c5 * h, y5);
    State<N> y6 = y;
    for (std::size_t i = 0; i < N; ++i)
      y6[i] += h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State<N> k6 = f(x + h, y6);
    State<N> ynew = y;
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State<N> k7 = f(x + h, ynew);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const cplx e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double q = std::abs(e) / sc;
      err += q * q;
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (!std::isfinite(err)) {
      // A trial stage left the domain (e.g. an overshot log deviation);
      // treat as a rejected step and retry shorter.
      ++rejected;
      h *= 0.2;
    } else {
      if (err <= 1.0) {
        x += h;
        y = ynew;
        k1 = k7;  // FSAL
      } else {
        ++rejected;
      }
      const double fac = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::min(5.0, std::max(0.2, fac));
    }
  }
  if (stats != nullptr) {
    stats->steps += steps;
    stats->rejected += rejected;
  }
  return y;
}

}  // namespace evanshock
