#pragma once

// Exact and second-order analysis of how a relative-efficiency mismatch biases
// the clone fidelities measured with the coincidence estimators.

#include <Eigen/Dense>

#include "symclone/cloner_model.hpp"
#include "symclone/detection.hpp"

namespace symclone {

/// eta = 1 + eps, so eps > -1.
struct MismatchPair {
  double eps_a = 0.0;
  double eps_b = 0.0;

  static MismatchPair make(double eps_a, double eps_b);
  static MismatchPair from_efficiency(const EfficiencyPair& eta) {
    return make(eta.eta_a - 1.0, eta.eta_b - 1.0);
  }
  /// Unlike EfficiencyPair::make this does not impose the calibration search range.
  EfficiencyPair efficiency() const { return {1.0 + eps_a, 1.0 + eps_b}; }
  MismatchPair swapped() const { return {eps_b, eps_a}; }
};

/// Q(eps) = coeff_aa eps_A^2 + coeff_ab eps_A eps_B + coeff_bb eps_B^2
struct QuadraticErrorForm {
  double coeff_aa = 0.0;
  double coeff_ab = 0.0;
  double coeff_bb = 0.0;

  double operator()(const MismatchPair& eps) const {
    return coeff_aa * eps.eps_a * eps.eps_a + coeff_ab * eps.eps_a * eps.eps_b +
           coeff_bb * eps.eps_b * eps.eps_b;
  }
  /// [[coeff_aa, coeff_ab/2], [coeff_ab/2, coeff_bb]]
  Eigen::Matrix2d matrix() const;
  /// Largest-magnitude eigenvalue of matrix(); |Q(eps)| <= it * |eps|^2.
  double bound_factor() const;
};

/// Measured f_A(psi) for detectors with relative efficiencies eta:
///   [P + (F_A-P) eta_B] / [P + (F_A-P) eta_B + (F_B-P) eta_A + (1+P-F_A-F_B) eta_A eta_B]
double biased_fidelity_psi(const MachineTriple& machine, const EfficiencyPair& eta);

/// Measured f_A(psi_perp); the psi formula with eta -> 1/eta.
double biased_fidelity_perp(const MachineTriple& machine, const EfficiencyPair& eta);

/// [f_A(psi) + f_A(psi_perp)] / 2
double biased_mean(const MachineTriple& machine, const EfficiencyPair& eta);

/// Second-order expansion of biased_mean - F_A in the mismatches:
///   coeff_aa = F_A(1-F_A)(1-2F_A)/2
///   coeff_ab = (2F_A-1)(F_A F_B - P)
///   coeff_bb = (P - F_A F_B)(1-2F_B)/2
/// The first-order terms vanish identically.
QuadraticErrorForm taylor_form(const MachineTriple& machine);

/// bound_factor() * (eps_A^2 + eps_B^2)
double error_bound(const QuadraticErrorForm& form, const MismatchPair& eps);

/// All robustness quantities for one clone at one mismatch.
struct CloneAnalysis {
  double f_psi = 0.0;
  double f_perp = 0.0;
  double mean = 0.0;
  /// mean - true fidelity
  double exact_error = 0.0;
  /// Coefficients in this clone's own labeling: coeff_aa multiplies its own mismatch squared.
  QuadraticErrorForm form;
  double quadratic_error = 0.0;
  double bound = 0.0;
};

CloneAnalysis clone_a_analysis(const MachineTriple& machine, const EfficiencyPair& eta);

/// The clone-A analysis on the label-swapped machine (F_A <-> F_B, eta_A <-> eta_B).
CloneAnalysis clone_b_analysis(const MachineTriple& machine, const EfficiencyPair& eta);

}  // namespace symclone
