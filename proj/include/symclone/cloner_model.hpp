#pragma once

// Partial-symmetrization cloner: V_S = Pi_+ + t Pi_- applied to (I/2) (x) psi.
//
// Clone A is the idler-side output (left tensor factor, lower fidelity for
// t > 0). Clone B is the signal-side output.

#include <Eigen/Dense>

#include "symclone/quantum_core.hpp"

namespace symclone {

/// Amplitude transmittance of the attenuated antisymmetric arm, 0 <= t <= 1.
class ClonerParams {
 public:
  explicit ClonerParams(double t);
  double t() const { return t_; }

 private:
  double t_;
};

/// Throws ParameterError unless 0 <= t <= 1.
void check_transmittance(double t);

/// Diagonal of the two-clone state in the (psi, psi_perp) product basis is
/// (P, F_A - P, F_B - P, 1 + P - F_A - F_B). Any triple keeping those four in
/// [0, 1] describes a covariant machine, not only the optimal cloner family.
struct MachineTriple {
  double fa;
  double fb;
  double p;

  /// Throws ParameterError when a diagonal element is negative beyond kAlgebraTol.
  static MachineTriple make(double fa, double fb, double p);
  /// Optimal symmetric cloner (5/6, 5/6, 2/3).
  static MachineTriple symmetric() { return {5.0 / 6.0, 5.0 / 6.0, 2.0 / 3.0}; }

  /// (P, F_A - P, F_B - P, 1 + P - F_A - F_B)
  Eigen::Vector4d diagonal() const;
  /// F_A <-> F_B, used to analyze clone B with the clone-A formulas.
  MachineTriple swapped() const { return {fb, fa, p}; }
};

struct ClonerOutput {
  DensityMatrix4 rho_out;  // unnormalized
  double success_probability;
};

struct ClonePair {
  DensityMatrix2 rho_a;
  DensityMatrix2 rho_b;
};

struct CloneFidelities {
  double fa;
  double fb;
};

/// |Psi-> = (|HV> - |VH>)/sqrt2 as a vector in the (HH, HV, VH, VV) ordering.
Eigen::Vector4d singlet();

/// Pi_+ + t Pi_-. Eigenvalues {1, 1, 1, t}.
Eigen::Matrix4d symmetrizer(double t);

/// V_S (I/2 (x) psi) V_S^dagger and its trace.
ClonerOutput apply_cloner(const PureState& input, double t);

/// Normalized reduced states, computed by conjugation with V_S and partial trace.
ClonePair clone_states(const PureState& input, double t);

/// Reduced clone states from their closed forms
///   rho_A = [(5 - 2t + t^2) psi + (1 + t)^2 psi_perp] / (2(3 + t^2))
///   rho_B = [(5 + 2t + t^2) psi + (1 - t)^2 psi_perp] / (2(3 + t^2))
ClonePair clone_states_closed_form(const PureState& input, double t);

/// F_A = (5 - 2t + t^2)/(2(3 + t^2)), F_B = (5 + 2t + t^2)/(2(3 + t^2)).
CloneFidelities clone_fidelities(double t);

/// (3 + t^2)/4
double success_probability(double t);

/// (1 - F_A)(1 - F_B) - (F_A + F_B - 3/2)^2; zero on the optimal trade-off curve.
double tradeoff_residual(double fa, double fb);

/// (F_A(t), F_B(t), 2/(3 + t^2))
MachineTriple machine_triple(double t);

}  // namespace symclone
