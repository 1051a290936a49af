#pragma once

// Dense one- and two-qubit polarization states.
//
// Two-qubit operators use the fixed product ordering (HH, HV, VH, VV): the
// left tensor factor is subsystem A and is the most significant index.

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace symclone {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Index of |ab> in the (HH, HV, VH, VV) ordering, with H = 0 and V = 1.
constexpr int two_qubit_index(int a, int b) { return 2 * a + b; }

/// Normalized qubit amplitude pair (a_H, a_V). The global phase is free.
class PureState {
 public:
  /// Throws ParameterError unless |a_H|^2 + |a_V|^2 = 1 within kAlgebraTol.
  PureState(Complex a_h, Complex a_v);

  /// Normalizes an arbitrary nonzero vector.
  static PureState from_unnormalized(Complex a_h, Complex a_v);

  Complex h() const { return amps_(0); }
  Complex v() const { return amps_(1); }
  const Eigen::Vector2cd& vector() const { return amps_; }

  /// <this|other>
  Complex inner(const PureState& other) const;
  /// |<this|other>|^2
  double overlap(const PureState& other) const;
  /// The orthogonal state (-conj(a_V), conj(a_H)).
  PureState orthogonal() const;
  /// Ray equality: |<this|other>|^2 = 1 within tol.
  bool same_ray(const PureState& other, double tol = kAlgebraTol) const;

 private:
  Eigen::Vector2cd amps_;
};

enum class Normalization { normalized, unnormalized };

/// Hermitian positive semidefinite Dim x Dim matrix. Normalized matrices have
/// unit trace; unnormalized ones (post-selected states) have trace <= 1.
template <int Dim>
class DensityMatrix {
 public:
  using Matrix = Eigen::Matrix<Complex, Dim, Dim>;

  /// Validates Hermiticity, positivity and the trace condition; throws ParameterError.
  explicit DensityMatrix(const Matrix& m, Normalization n = Normalization::normalized);

  static DensityMatrix maximally_mixed();

  const Matrix& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }
  bool is_normalized() const { return norm_ == Normalization::normalized; }
  double trace() const { return m_.trace().real(); }
  double min_eigenvalue() const;
  double hermiticity_defect() const;

  /// Divides by the trace. Throws ParameterError on a zero-trace matrix.
  DensityMatrix normalized() const;

 private:
  Matrix m_;
  Normalization norm_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix4 = DensityMatrix<4>;

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;

DensityMatrix2 projector(const PureState& psi);

/// Orthonormal pair (psi, psi_perp).
class BasisPair {
 public:
  BasisPair(PureState psi, PureState psi_perp);

  const PureState& psi() const { return psi_; }
  const PureState& psi_perp() const { return psi_perp_; }
  const PureState& operator[](int k) const { return k == 0 ? psi_ : psi_perp_; }

 private:
  PureState psi_;
  PureState psi_perp_;
};

enum class Subsystem { A, B };

enum class CatalogState { H = 0, V = 1, D = 2, A = 3, R = 4, L = 5 };

inline constexpr int kCatalogSize = 6;
inline constexpr int kBasisCount = 3;

/// H, V, D = (H+V)/sqrt2, A = (H-V)/sqrt2, R = (H+iV)/sqrt2, L = (H-iV)/sqrt2, in that order.
const std::array<PureState, kCatalogSize>& catalog_states();

/// (H,V), (D,A), (R,L). Catalog state k belongs to basis k/2 and is its psi when k is even.
const std::array<BasisPair, kBasisCount>& mub_bases();

const char* state_label(int catalog_index);
const char* basis_label(int basis_index);

DensityMatrix4 tensor(const DensityMatrix2& left, const DensityMatrix2& right);

/// Reduced matrix over `keep`. Trace is preserved, so normalized input yields normalized output.
DensityMatrix2 partial_trace(const DensityMatrix4& state, Subsystem keep);

/// <target|state|target>. Throws ParameterError for unnormalized input.
double fidelity(const DensityMatrix2& state, const PureState& target);

}  // namespace symclone
