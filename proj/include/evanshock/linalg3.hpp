#pragma once

// Small dense complex linear algebra for the fixed 3x3 spectral systems:
// cubic characteristic roots, null-space eigenvectors, deterministic
// normalization. No external dependencies; everything is closed-form.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace evanshock {

using cplx = std::complex<double>;
using Vec3 = std::array<cplx, 3>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

inline cplx dot_bilinear(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Conjugate pairing <a,b> = sum conj(a_i) b_i.
inline cplx dot_conj(const Vec3& a, const Vec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

inline double norm2(const Vec3& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

inline Vec3 operator*(cplx s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[j][i];
  return r;
}

inline Mat3 adjoint(const Mat3& m) {  // conjugate transpose
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = std::conj(m[j][i]);
  return r;
}

inline cplx trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

inline Vec3 cross_bilinear(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double mat_max_abs(const Mat3& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (const auto& e : row) r = std::max(r, std::abs(e));
  return r;
}

// Index of the entry of largest modulus; ties resolved to the lowest index
// (relative tolerance 1e-12) so the choice is deterministic and conjugation
// symmetric.
inline int largest_entry_index(const Vec3& v) {
  double best = std::abs(v[0]);
  int idx = 0;
  for (int i = 1; i < 3; ++i) {
    double m = std::abs(v[i]);
    if (m > best * (1.0 + 1e-12)) {
      best = m;
      idx = i;
    }
  }
  return idx;
}

// Scale so the largest-modulus entry becomes exactly 1 (positive real).
inline Vec3 normalize_largest_entry(const Vec3& v) {
  const int i = largest_entry_index(v);
  const cplx e = v[i];
  if (e == cplx(0.0, 0.0)) throw std::domain_error("normalize_largest_entry: zero vector");
  return (1.0 / e) * v;
}

// Roots of the monic cubic x^3 + a2 x^2 + a1 x + a0 over C, Cardano branch
// chosen to avoid cancellation, then Newton-polished on the original cubic.
inline std::array<cplx, 2> quadratic_roots_sum_prod(cplx s, cplx p);

inline std::array<cplx, 3> cubic_roots(cplx a2, cplx a1, cplx a0) {
  if (a0 == cplx(0.0)) {  // exact zero root; deflate to the quadratic
    const auto q = quadratic_roots_sum_prod(-a2, a1);
    return {cplx(0.0), q[0], q[1]};
  }
  const cplx p = a1 - a2 * a2 / 3.0;
  const cplx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  std::array<cplx, 3> t;
  if (std::abs(p) == 0.0 && std::abs(q) == 0.0) {
    t = {0.0, 0.0, 0.0};
  } else {
    const cplx sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx u3 = -q / 2.0 + sq;
    if (std::abs(-q / 2.0 - sq) > std::abs(u3)) u3 = -q / 2.0 - sq;
    const cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx v = (std::abs(u) > 0.0) ? -p / (3.0 * u) : cplx(0.0);
    const cplx w(-0.5, std::sqrt(3.0) / 2.0);  // primitive cube root of unity
    t = {u + v, w * u + std::conj(w) * v, std::conj(w) * u + w * v};
  }
  std::array<cplx, 3> x;
  for (int i = 0; i < 3; ++i) {
    cplx r = t[i] - a2 / 3.0;
    for (int it = 0; it < 8; ++it) {
      const cplx f = ((r + a2) * r + a1) * r + a0;
      const cplx df = (3.0 * r + 2.0 * a2) * r + a1;
      if (std::abs(df) == 0.0) break;
      const cplx step = f / df;
      r -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(r))) break;
    }
    x[i] = r;
  }
  return x;
}

// Roots of x^2 - s x + p, the larger-|.|" root computed first to keep the
// subtraction stable, the other from the product.
inline std::array<cplx, 2> quadratic_roots_sum_prod(cplx s, cplx p) {
  const cplx w = std::sqrt(s * s - 4.0 * p);
  const cplx wa = (std::real(std::conj(s) * w) >= 0.0) ? w : -w;
  const cplx r1 = 0.5 * (s + wa);
  const cplx r2 = (std::abs(r1) > 0.0) ? p / r1 : 0.5 * (s - wa);
  return {r1, r2};
}

// Null vector of the (rank-2) matrix M - mu I via the largest row cross
// product. For a simple eigenvalue this is the eigenvector.
inline Vec3 null_vector(const Mat3& m, cplx mu) {
  Mat3 b = m;
  for (int i = 0; i < 3; ++i) b[i][i] -= mu;
  const Vec3 r0 = {b[0][0], b[0][1], b[0][2]};
  const Vec3 r1 = {b[1][0], b[1][1], b[1][2]};
  const Vec3 r2 = {b[2][0], b[2][1], b[2][2]};
  const std::array<Vec3, 3> cand = {cross_bilinear(r0, r1), cross_bilinear(r0, r2),
                                    cross_bilinear(r1, r2)};
  int best = 0;
  double bestn = norm2(cand[0]);
  for (int i = 1; i < 3; ++i) {
    const double n = norm2(cand[i]);
    if (n > bestn) {
      bestn = n;
      best = i;
    }
  }
  if (bestn == 0.0) throw std::runtime_error("null_vector: matrix not rank 2 at given eigenvalue");
  return cand[best];
}

inline Vec3 eigvec(const Mat3& m, cplx mu) { return normalize_largest_entry(null_vector(m, mu)); }

// Left eigenvector (row vector, bilinear convention: l (M - mu I) = 0).
inline Vec3 left_eigvec(const Mat3& m, cplx mu) {
  return normalize_largest_entry(null_vector(transpose(m), mu));
}

inline double eig_residual(const Mat3& m, cplx mu, const Vec3& v) {
  const Vec3 mv = mat_vec(m, v);
  Vec3 r = {mv[0] - mu * v[0], mv[1] - mu * v[1], mv[2] - mu * v[2]};
  return norm2(r) / std::max(norm2(v), 1e-300);
}

}  // namespace evanshock
