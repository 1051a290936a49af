#include "symclone/robustness.hpp"

#include <cmath>
#include <sstream>

#include "symclone/errors.hpp"

namespace symclone {

namespace {

void check_positive(const EfficiencyPair& eta) {
  if (!(eta.eta_a > 0.0 && eta.eta_b > 0.0) || !std::isfinite(eta.eta_a) || !std::isfinite(eta.eta_b)) {
    throw ParameterError("relative efficiencies must be positive and finite");
  }
}

}  // namespace

MismatchPair MismatchPair::make(double eps_a, double eps_b) {
  if (!(eps_a > -1.0 && eps_b > -1.0) || !std::isfinite(eps_a) || !std::isfinite(eps_b)) {
    std::ostringstream os;
    os << "mismatch (" << eps_a << ", " << eps_b << ") must satisfy eps > -1";
    throw ParameterError(os.str());
  }
  return {eps_a, eps_b};
}

Eigen::Matrix2d QuadraticErrorForm::matrix() const {
  Eigen::Matrix2d m;
  m << coeff_aa, 0.5 * coeff_ab, 0.5 * coeff_ab, coeff_bb;
  return m;
}

double QuadraticErrorForm::bound_factor() const {
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(matrix()).eigenvalues();
  return ev.cwiseAbs().maxCoeff();
}

double biased_fidelity_psi(const MachineTriple& m, const EfficiencyPair& eta) {
  check_positive(eta);
  const Eigen::Vector4d d = m.diagonal();
  const double num = d(0) + d(1) * eta.eta_b;
  return num / (num + d(2) * eta.eta_a + d(3) * eta.eta_a * eta.eta_b);
}

double biased_fidelity_perp(const MachineTriple& m, const EfficiencyPair& eta) {
  check_positive(eta);
  const Eigen::Vector4d d = m.diagonal();
  const double ab = eta.eta_a * eta.eta_b;
  const double num = d(0) * ab + d(1) * eta.eta_a;
  return num / (num + d(2) * eta.eta_b + d(3));
}

double biased_mean(const MachineTriple& m, const EfficiencyPair& eta) {
  return 0.5 * (biased_fidelity_psi(m, eta) + biased_fidelity_perp(m, eta));
}

QuadraticErrorForm taylor_form(const MachineTriple& m) {
  const double fa = m.fa, fb = m.fb, p = m.p;
  return {0.5 * fa * (1.0 - fa) * (1.0 - 2.0 * fa),
          (2.0 * fa - 1.0) * (fa * fb - p),
          0.5 * (p - fa * fb) * (1.0 - 2.0 * fb)};
}

double error_bound(const QuadraticErrorForm& form, const MismatchPair& eps) {
  return form.bound_factor() * (eps.eps_a * eps.eps_a + eps.eps_b * eps.eps_b);
}

CloneAnalysis clone_a_analysis(const MachineTriple& machine, const EfficiencyPair& eta) {
  const MismatchPair eps = MismatchPair::from_efficiency(eta);
  CloneAnalysis out;
  out.f_psi = biased_fidelity_psi(machine, eta);
  out.f_perp = biased_fidelity_perp(machine, eta);
  out.mean = 0.5 * (out.f_psi + out.f_perp);
  out.exact_error = out.mean - machine.fa;
  out.form = taylor_form(machine);
  out.quadratic_error = out.form(eps);
  out.bound = error_bound(out.form, eps);
  return out;
}

CloneAnalysis clone_b_analysis(const MachineTriple& machine, const EfficiencyPair& eta) {
  return clone_a_analysis(machine.swapped(), eta.swapped());
}

}  // namespace symclone
