#pragma once

// Contour construction on the boundary of {Re lam >= 0} n {|lam| <= R} with
// an indentation around the origin, winding numbers with a phase-step
// certificate, D vs D0 comparison statistics, the Rouche-threshold search
// over v+, and the stability certification driver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "evanshock/evans.hpp"

namespace evanshock {

struct ContourError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered counterclockwise traversal starting at lambda = r0 on the real
// axis: lower indent quarter-arc, lower imaginary segment, big arc through
// +R, upper imaginary segment, upper indent quarter-arc (closing point
// excluded). Axis samples are spaced by arc length with doubled density
// within distance 1 of the origin. The sample multiset is conjugate
// symmetric by construction.
struct Contour {
  double radius = 10.0;
  int n_points = 256;
  double indent_radius = 1e-4;
  std::vector<cplx> samples;
  std::vector<char> on_indent;
};

namespace detail {

// Positions of k axis samples on (r0, R], equally spaced in the weighted
// arc length with weight 2 on [r0, min(1,R)] and 1 beyond.
inline std::vector<double> weighted_axis_points(double r0, double radius, int k) {
  const double knee = std::min(1.0, radius);
  const double w_total = 2.0 * (knee - r0) + std::max(0.0, radius - knee);
  std::vector<double> ys(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    const double s = w_total * static_cast<double>(j) / static_cast<double>(k);
    ys[static_cast<std::size_t>(j - 1)] =
        (s <= 2.0 * (knee - r0)) ? r0 + 0.5 * s : knee + (s - 2.0 * (knee - r0));
  }
  ys.back() = radius;
  return ys;
}

}  // namespace detail

inline Contour build_contour(double radius, int n_points, double indent_radius = 1e-4) {
  if (!(radius > 0.0)) throw ContourError("build_contour: radius must be positive");
  if (n_points < 16) throw ContourError("build_contour: n_points must be >= 16");
  if (!(indent_radius > 0.0) || indent_radius >= 0.5 * radius)
    throw ContourError("build_contour: indent radius must lie in (0, radius/2)");

  const int k0 = std::max(2, static_cast<int>(std::lround(n_points * 0.02)));  // indent quarter
  const int m = n_points - 2 * k0;
  const double knee = std::min(1.0, radius);
  const double w_axis = 2.0 * (knee - indent_radius) + std::max(0.0, radius - knee);
  const double w_arc = 3.14159265358979323846 * radius;
  int k1 = std::max(3, static_cast<int>(std::lround(m * w_axis / (2.0 * w_axis + w_arc))));
  int k2 = m - 2 * k1;
  if (k2 < 4) {
    k1 = (m - 4) / 2;
    k2 = m - 2 * k1;
  }
  if (k1 < 1) throw ContourError("build_contour: n_points too small for the geometry");

  Contour c;
  c.radius = radius;
  c.n_points = n_points;
  c.indent_radius = indent_radius;
  c.samples.reserve(static_cast<std::size_t>(n_points));

  const double pi = 3.14159265358979323846;
  const cplx i1(0.0, 1.0);
  // start + lower indent quarter
  for (int j = 0; j <= k0; ++j) {
    const double th = -0.5 * pi * static_cast<double>(j) / static_cast<double>(k0);
    c.samples.push_back(indent_radius * std::exp(i1 * th));
  }
  // lower imaginary segment, -i r0 -> -i R (start point excluded)
  const auto ys = detail::weighted_axis_points(indent_radius, radius, k1);
  for (int j = 0; j < k1; ++j) c.samples.push_back(-i1 * ys[static_cast<std::size_t>(j)]);
  // big arc -iR -> +iR
  for (int j = 1; j <= k2; ++j) {
    const double th = -0.5 * pi + pi * static_cast<double>(j) / static_cast<double>(k2);
    c.samples.push_back(radius * std::exp(i1 * th));
  }
  // upper imaginary segment, +iR -> +i r0 (iR excluded)
  for (int j = k1 - 1; j >= 0; --j)
    c.samples.push_back(j == 0 ? i1 * indent_radius : i1 * ys[static_cast<std::size_t>(j - 1)]);
  // upper indent quarter, +i r0 -> r0 (both ends excluded)
  for (int j = 1; j < k0; ++j) {
    const double th = 0.5 * pi * (1.0 - static_cast<double>(j) / static_cast<double>(k0));
    c.samples.push_back(indent_radius * std::exp(i1 * th));
  }

  if (static_cast<int>(c.samples.size()) != n_points)
    throw ContourError("build_contour: internal sample count mismatch");
  c.on_indent.resize(c.samples.size());
  for (std::size_t k = 0; k < c.samples.size(); ++k)
    c.on_indent[k] = std::abs(c.samples[k]) <= indent_radius * (1.0 + 1e-9) ? 1 : 0;
  return c;
}

struct ZeroOnContourError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WindingResult {
  int winding = 0;
  double sum_over_2pi = 0.0;
  double max_increment = 0.0;
  bool certified = false;  // all phase steps < pi/2
};

inline WindingResult winding_number(std::span<const cplx> values, bool closed) {
  if (values.size() < 2) throw ContourError("winding_number: need at least two values");
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k]) <= 1e-12) {
      std::ostringstream os;
      os << "winding_number: value within 1e-12 of the origin at index " << k;
      throw ZeroOnContourError(os.str());
    }
  double sum = 0.0, maxinc = 0.0;
  const std::size_t n = values.size();
  const std::size_t last = closed ? n : n - 1;
  for (std::size_t k = 0; k < last; ++k) {
    const cplx r = values[(k + 1) % n] / values[k];
    const double inc = std::arg(r);
    sum += inc;
    maxinc = std::max(maxinc, std::abs(inc));
  }
  WindingResult out;
  out.sum_over_2pi = sum / (2.0 * 3.14159265358979323846);
  out.winding = static_cast<int>(std::lround(out.sum_over_2pi));
  out.max_increment = maxinc;
  out.certified = maxinc < 0.5 * 3.14159265358979323846;
  return out;
}

struct CompareResult {
  double max_rel = 0.0;
  double max_abs = 0.0;
};

// Max of |D-D0|/|D0| and |D-D0| over the non-indent samples; both curves
// must come from the same contour and conventions.
inline CompareResult compare_values(const Contour& contour, std::span<const EvansValue> d,
                                    std::span<const EvansValue> d0) {
  if (d.size() != contour.samples.size() || d0.size() != contour.samples.size())
    throw ContourError("compare_values: size mismatch");
  CompareResult out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (contour.on_indent[k]) continue;
    const double diff = std::abs(d[k].d - d0[k].d);
    out.max_abs = std::max(out.max_abs, diff);
    out.max_rel = std::max(out.max_rel, diff / std::abs(d0[k].d));
  }
  return out;
}

inline CompareResult compare_to_limit(double gamma, double v_plus, const Contour& contour,
                                      const EvansConfig& cfg,
                                      std::span<const EvansValue> d0_precomputed = {}) {
  const EigenSystem sys = EigenSystem::finite(ShockParams::make(gamma, v_plus));
  const auto d = evans_on_contour(contour.samples, sys, cfg);
  if (!d0_precomputed.empty()) return compare_values(contour, d, d0_precomputed);
  const auto d0 = evans_on_contour(contour.samples, EigenSystem::limit(), cfg);
  return compare_values(contour, d, d0);
}

struct RoucheResult {
  double v_plus_star = 0.0;
  double mach = 0.0;
  double rel_at_star = 0.0;
  int evaluations = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
};

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bisection on ln(v+) for max_rel(v+) = threshold. The bracket is verified,
// not assumed; the returned point satisfies |max_rel - threshold| within 2%
// of the threshold.
inline RoucheResult rouche_bound_search(double gamma, double threshold, const Contour& contour,
                                        double v_lo, double v_hi, double tol,
                                        const EvansConfig& cfg) {
  if (!(threshold > 0.0) || !(threshold < 1.0))
    throw std::domain_error("rouche_bound_search: threshold must lie in (0,1)");
  if (!(v_lo > 0.0) || !(v_hi > v_lo) || v_hi > 1.0)
    throw std::domain_error("rouche_bound_search: invalid search interval");
  const auto d0 = evans_on_contour(contour.samples, EigenSystem::limit(), cfg);
  int evals = 1;
  const auto rel_at = [&](double vp) {
    ++evals;
    return compare_to_limit(gamma, vp, contour, cfg, d0).max_rel;
  };
  const double r_lo = rel_at(v_lo), r_hi = rel_at(v_hi);
  if (!(r_lo < threshold && threshold < r_hi)) {
    std::ostringstream os;
    os << "rouche_bound_search: threshold " << threshold << " not bracketed: rel(" << v_lo
       << ")=" << r_lo << ", rel(" << v_hi << ")=" << r_hi;
    throw BracketError(os.str());
  }
  double lo = v_lo, hi = v_hi, mid = std::sqrt(v_lo * v_hi), r_mid = 0.0;
  while (true) {
    mid = std::sqrt(lo * hi);
    r_mid = rel_at(mid);
    if (r_mid < threshold)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol * mid) break;
    if (evals > 200) throw BracketError("rouche_bound_search: evaluation budget exhausted");
  }
  mid = std::sqrt(lo * hi);
  r_mid = rel_at(mid);
  ++evals;
  if (std::abs(r_mid - threshold) > 0.02 * threshold) {
    std::ostringstream os;
    os << "rouche_bound_search: converged bracket misses threshold by "
       << std::abs(r_mid - threshold) << " (tol too coarse?)";
    throw BracketError(os.str());
  }
  RoucheResult out;
  out.v_plus_star = mid;
  out.mach = ShockParams::make(gamma, mid).mach;
  out.rel_at_star = r_mid;
  out.evaluations = evals;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  return out;
}

enum class Verdict { stable_certified, rouche_transfer, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable_certified: return "stable_certified";
    case Verdict::rouche_transfer: return "rouche_transfer";
    default: return "inconclusive";
  }
}

struct RefinementStep {
  int n_points = 0;
  int winding = 0;
  double max_increment = 0.0;
  bool certified = false;
};

struct StabilityReport {
  bool limiting = true;
  double gamma = 0.0, v_plus = 0.0, mach = 0.0;
  double radius = 10.0;
  int n_points_final = 0;
  int winding = 0;
  bool certified = false;
  double min_modulus = 0.0;
  std::optional<double> max_rel_error, max_abs_error;
  std::optional<int> d0_winding;
  Verdict verdict = Verdict::inconclusive;
  std::vector<RefinementStep> trace;
  std::vector<std::string> warnings;
  std::string diagnostic;
};

struct CertifyConfig {
  bool limiting = true;
  double gamma = 5.0 / 3.0;
  double v_plus = 1e-3;
  double radius = 10.0;
  int n_points = 256;
  double indent_radius = 1e-4;
  int max_refinements = 3;
  bool compare = false;  // also evaluate D0 and the Rouche transfer route
  EvansConfig evans;
};

inline StabilityReport certify_stability(const CertifyConfig& cfg) {
  StabilityReport rep;
  rep.limiting = cfg.limiting;
  rep.radius = cfg.radius;
  if (!cfg.limiting) {
    rep.gamma = cfg.gamma;
    rep.v_plus = cfg.v_plus;
    rep.mach = ShockParams::make(cfg.gamma, cfg.v_plus).mach;
    if (cfg.radius < wedge_bound(cfg.gamma)) {
      std::ostringstream os;
      os << "contour radius " << cfg.radius << " < wedge bound " << wedge_bound(cfg.gamma)
         << "; the contour may not enclose all nonstable eigenvalues";
      rep.warnings.push_back(os.str());
    }
  }
  const EigenSystem sys =
      cfg.limiting ? EigenSystem::limit() : EigenSystem::finite(ShockParams::make(cfg.gamma, cfg.v_plus));

  std::vector<EvansValue> values;
  Contour contour;
  bool certified = false;
  WindingResult wr;
  for (int refine = 0, n = cfg.n_points; refine <= cfg.max_refinements; ++refine, n *= 2) {
    contour = build_contour(cfg.radius, n, cfg.indent_radius);
    values = evans_on_contour(contour.samples, sys, cfg.evans);
    std::vector<cplx> ds(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) ds[k] = values[k].d;
    wr = winding_number(ds, /*closed=*/true);
    rep.trace.push_back({n, wr.winding, wr.max_increment, wr.certified});
    if (wr.certified) {
      certified = true;
      break;
    }
  }
  rep.n_points_final = contour.n_points;
  rep.winding = wr.winding;
  rep.certified = certified;
  double mn = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!contour.on_indent[k]) mn = std::min(mn, std::abs(values[k].d));
  rep.min_modulus = mn;

  bool rouche_ok = false;
  if (cfg.compare && !cfg.limiting) {
    const auto d0 = evans_on_contour(contour.samples, EigenSystem::limit(), cfg.evans);
    const auto cmp = compare_values(contour, values, d0);
    rep.max_rel_error = cmp.max_rel;
    rep.max_abs_error = cmp.max_abs;
    std::vector<cplx> d0s(d0.size());
    for (std::size_t k = 0; k < d0.size(); ++k) d0s[k] = d0[k].d;
    const auto w0 = winding_number(d0s, true);
    rep.d0_winding = w0.winding;
    rouche_ok = w0.certified && w0.winding == 0 && cmp.max_rel < 1.0;
  }

  if (rouche_ok)
    rep.verdict = Verdict::rouche_transfer;
  else if (certified && wr.winding == 0)
    rep.verdict = Verdict::stable_certified;
  else {
    rep.verdict = Verdict::inconclusive;
    std::ostringstream os;
    if (!certified)
      os << "phase-step certificate failed after " << rep.trace.size()
         << " refinement level(s); max increment " << wr.max_increment;
    else
      os << "winding number " << wr.winding << " != 0";
    rep.diagnostic = os.str();
  }
  return rep;
}

}  // namespace evanshock
