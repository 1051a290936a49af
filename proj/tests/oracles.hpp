#pragma once

// Reference computations for the tests. They use plain arrays and explicit
// kets, never the library's matrix code paths.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "symclone/quantum_core.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat2 = std::array<std::array<C, 2>, 2>;
using Mat4 = std::array<std::array<C, 4>, 4>;
using Ket4 = std::array<C, 4>;

inline Mat2 to_array(const symclone::DensityMatrix2& m) {
  Mat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] = m(i, j);
  return a;
}

inline Mat4 to_array(const symclone::DensityMatrix4& m) {
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = m(i, j);
  return a;
}

/// Kronecker product with the A index as the high bit.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = a[r >> 1][c >> 1] * b[r & 1][c & 1];
  return out;
}

/// Element-wise summation over the traced-out index.
inline Mat2 trace_out_b(const Mat4& m) {
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = m[2 * i][2 * j] + m[2 * i + 1][2 * j + 1];
  return out;
}

inline Mat2 trace_out_a(const Mat4& m) {
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = m[i][j] + m[2 + i][2 + j];
  return out;
}

inline double max_diff(const Mat2& a, const Mat2& b) {
  double d = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

inline double max_diff(const Mat4& a, const Mat4& b) {
  double d = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

inline Ket4 product_ket(const std::array<C, 2>& a, const std::array<C, 2>& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

/// Post-selected output built ket by ket: the maximally mixed idler is the
/// equal mixture of |H> and |V>, each component is filtered by
/// |k> -> |k> - (1-t) <singlet|k> |singlet>, and the outer products are summed.
inline Mat4 filtered_output(const std::array<C, 2>& signal, double t) {
  const double s = 1.0 / std::sqrt(2.0);
  const Ket4 singlet{0.0, s, -s, 0.0};
  Mat4 out{};
  for (const std::array<C, 2>& idler : {std::array<C, 2>{1.0, 0.0}, std::array<C, 2>{0.0, 1.0}}) {
    Ket4 k = product_ket(idler, signal);
    C overlap = 0;
    for (int i = 0; i < 4; ++i) overlap += std::conj(singlet[i]) * k[i];
    for (int i = 0; i < 4; ++i) k[i] -= (1.0 - t) * overlap * singlet[i];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out[r][c] += 0.5 * k[r] * std::conj(k[c]);
  }
  return out;
}

inline symclone::PureState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return symclone::PureState::from_unnormalized({g(rng), g(rng)}, {g(rng), g(rng)});
}

inline symclone::DensityMatrix2 random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const symclone::PureState a = random_state(rng), b = random_state(rng);
  const double w = u(rng);
  const Eigen::Matrix2cd m =
      w * a.vector() * a.vector().adjoint() + (1 - w) * b.vector() * b.vector().adjoint();
  return symclone::DensityMatrix2(m);
}

inline Eigen::Vector4cd random_ket4(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4cd k;
  for (int i = 0; i < 4; ++i) k(i) = {g(rng), g(rng)};
  return k.normalized();
}

/// Central difference of f along one coordinate.
template <class F>
double central_diff(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracle
