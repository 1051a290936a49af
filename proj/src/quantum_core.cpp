#include "symclone/quantum_core.hpp"

#include <cmath>
#include <sstream>

#include "symclone/errors.hpp"

namespace symclone {

PureState::PureState(Complex a_h, Complex a_v) : amps_(a_h, a_v) {
  const double norm2 = amps_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kAlgebraTol)) {
    std::ostringstream os;
    os << "pure state is not normalized: |a_H|^2 + |a_V|^2 = " << norm2;
    throw ParameterError(os.str());
  }
}

PureState PureState::from_unnormalized(Complex a_h, Complex a_v) {
  const double norm = std::sqrt(std::norm(a_h) + std::norm(a_v));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ParameterError("cannot normalize a zero or non-finite amplitude vector");
  }
  return PureState(a_h / norm, a_v / norm);
}

Complex PureState::inner(const PureState& other) const { return amps_.dot(other.amps_); }

double PureState::overlap(const PureState& other) const { return std::norm(inner(other)); }

PureState PureState::orthogonal() const { return PureState(-std::conj(v()), std::conj(h())); }

bool PureState::same_ray(const PureState& other, double tol) const {
  return std::abs(overlap(other) - 1.0) <= tol;
}

template <int Dim>
DensityMatrix<Dim>::DensityMatrix(const Matrix& m, Normalization n) : m_(m), norm_(n) {
  if (!m_.allFinite()) {
    throw ParameterError("density matrix has non-finite entries");
  }
  if (hermiticity_defect() > kAlgebraTol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian: max |M - M^dagger| = " << hermiticity_defect();
    throw ParameterError(os.str());
  }
  // Symmetrize away the sub-tolerance anti-Hermitian residue.
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
  const double tr = trace();
  if (n == Normalization::normalized ? std::abs(tr - 1.0) > kAlgebraTol : tr > 1.0 + kAlgebraTol) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " violates the "
       << (n == Normalization::normalized ? "unit-trace" : "trace <= 1") << " condition";
    throw ParameterError(os.str());
  }
  if (const double lmin = min_eigenvalue(); lmin < -kPositivityTol) {
    std::ostringstream os;
    os << "density matrix is not positive semidefinite: min eigenvalue " << lmin;
    throw ParameterError(os.str());
  }
}

template <int Dim>
DensityMatrix<Dim> DensityMatrix<Dim>::maximally_mixed() {
  return DensityMatrix(Matrix::Identity() / static_cast<double>(Dim));
}

template <int Dim>
double DensityMatrix<Dim>::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

template <int Dim>
double DensityMatrix<Dim>::hermiticity_defect() const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

template <int Dim>
DensityMatrix<Dim> DensityMatrix<Dim>::normalized() const {
  const double tr = trace();
  if (!(tr > 0.0)) {
    throw ParameterError("cannot normalize a density matrix with zero trace");
  }
  return DensityMatrix(m_ / tr, Normalization::normalized);
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

DensityMatrix2 projector(const PureState& psi) {
  return DensityMatrix2(psi.vector() * psi.vector().adjoint());
}

BasisPair::BasisPair(PureState psi, PureState psi_perp) : psi_(psi), psi_perp_(psi_perp) {
  if (std::abs(psi_.inner(psi_perp_)) > kAlgebraTol) {
    throw ParameterError("basis pair states are not orthogonal");
  }
}

const std::array<PureState, kCatalogSize>& catalog_states() {
  static const std::array<PureState, kCatalogSize> states = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    return std::array<PureState, kCatalogSize>{
        PureState(1.0, 0.0), PureState(0.0, 1.0),   // H, V
        PureState(s, s),     PureState(s, -s),      // D, A
        PureState(s, i * s), PureState(s, -i * s),  // R, L
    };
  }();
  return states;
}

const std::array<BasisPair, kBasisCount>& mub_bases() {
  static const std::array<BasisPair, kBasisCount> bases = [] {
    const auto& c = catalog_states();
    return std::array<BasisPair, kBasisCount>{
        BasisPair(c[0], c[1]), BasisPair(c[2], c[3]), BasisPair(c[4], c[5])};
  }();
  return bases;
}

const char* state_label(int catalog_index) {
  static constexpr const char* labels[kCatalogSize] = {"H", "V", "D", "A", "R", "L"};
  if (catalog_index < 0 || catalog_index >= kCatalogSize) {
    throw ParameterError("catalog index out of range");
  }
  return labels[catalog_index];
}

const char* basis_label(int basis_index) {
  static constexpr const char* labels[kBasisCount] = {"HV", "DA", "RL"};
  if (basis_index < 0 || basis_index >= kBasisCount) {
    throw ParameterError("basis index out of range");
  }
  return labels[basis_index];
}

DensityMatrix4 tensor(const DensityMatrix2& left, const DensityMatrix2& right) {
  DensityMatrix4::Matrix out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          out(two_qubit_index(a, b), two_qubit_index(c, d)) = left(a, c) * right(b, d);
  const bool norm = left.is_normalized() && right.is_normalized();
  return DensityMatrix4(out, norm ? Normalization::normalized : Normalization::unnormalized);
}

DensityMatrix2 partial_trace(const DensityMatrix4& state, Subsystem keep) {
  DensityMatrix2::Matrix out = DensityMatrix2::Matrix::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Subsystem::A ? state(two_qubit_index(i, k), two_qubit_index(j, k))
                                          : state(two_qubit_index(k, i), two_qubit_index(k, j));
      }
  return DensityMatrix2(out, state.is_normalized() ? Normalization::normalized
                                                   : Normalization::unnormalized);
}

double fidelity(const DensityMatrix2& state, const PureState& target) {
  if (!state.is_normalized()) {
    throw ParameterError("fidelity requires a normalized state; normalize the post-selected state first");
  }
  const Complex f = target.vector().dot(state.matrix() * target.vector());
  return f.real();
}

}  // namespace symclone
