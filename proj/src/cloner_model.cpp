#include "symclone/cloner_model.hpp"

#include <cmath>
#include <sstream>

#include "symclone/errors.hpp"

namespace symclone {

void check_transmittance(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "transmittance t = " << t << " outside [0, 1]";
    throw ParameterError(os.str());
  }
}

ClonerParams::ClonerParams(double t) : t_(t) { check_transmittance(t); }

MachineTriple MachineTriple::make(double fa, double fb, double p) {
  const MachineTriple m{fa, fb, p};
  const Eigen::Vector4d d = m.diagonal();
  if (!d.allFinite() || d.minCoeff() < -kAlgebraTol || d.maxCoeff() > 1.0 + kAlgebraTol) {
    std::ostringstream os;
    os << "machine triple (F_A=" << fa << ", F_B=" << fb << ", P=" << p
       << ") has a diagonal element outside [0, 1]";
    throw ParameterError(os.str());
  }
  return m;
}

Eigen::Vector4d MachineTriple::diagonal() const {
  return {p, fa - p, fb - p, 1.0 + p - fa - fb};
}

Eigen::Vector4d singlet() {
  const double s = 1.0 / std::sqrt(2.0);
  return {0.0, s, -s, 0.0};
}

Eigen::Matrix4d symmetrizer(double t) {
  check_transmittance(t);
  const Eigen::Vector4d s = singlet();
  const Eigen::Matrix4d pi_minus = s * s.transpose();
  const Eigen::Matrix4d pi_plus = Eigen::Matrix4d::Identity() - pi_minus;
  return pi_plus + t * pi_minus;
}

ClonerOutput apply_cloner(const PureState& input, double t) {
  const Eigen::Matrix4cd vs = symmetrizer(t).cast<Complex>();
  const DensityMatrix4 in = tensor(DensityMatrix2::maximally_mixed(), projector(input));
  const Eigen::Matrix4cd out = vs * in.matrix() * vs.adjoint();
  DensityMatrix4 rho(out, Normalization::unnormalized);
  const double p = rho.trace();
  return {std::move(rho), p};
}

ClonePair clone_states(const PureState& input, double t) {
  const DensityMatrix4 rho = apply_cloner(input, t).rho_out.normalized();
  return {partial_trace(rho, Subsystem::A), partial_trace(rho, Subsystem::B)};
}

ClonePair clone_states_closed_form(const PureState& input, double t) {
  check_transmittance(t);
  const Eigen::Matrix2cd psi = input.vector() * input.vector().adjoint();
  const Eigen::Matrix2cd perp = Eigen::Matrix2cd::Identity() - psi;
  const double denom = 2.0 * (3.0 + t * t);
  const Eigen::Matrix2cd a = ((5.0 - 2.0 * t + t * t) * psi + (1.0 + t) * (1.0 + t) * perp) / denom;
  const Eigen::Matrix2cd b = ((5.0 + 2.0 * t + t * t) * psi + (1.0 - t) * (1.0 - t) * perp) / denom;
  return {DensityMatrix2(a), DensityMatrix2(b)};
}

CloneFidelities clone_fidelities(double t) {
  check_transmittance(t);
  const double denom = 2.0 * (3.0 + t * t);
  return {(5.0 - 2.0 * t + t * t) / denom, (5.0 + 2.0 * t + t * t) / denom};
}

double success_probability(double t) {
  check_transmittance(t);
  return (3.0 + t * t) / 4.0;
}

double tradeoff_residual(double fa, double fb) {
  const double excess = fa + fb - 1.5;
  return (1.0 - fa) * (1.0 - fb) - excess * excess;
}

MachineTriple machine_triple(double t) {
  const CloneFidelities f = clone_fidelities(t);
  return MachineTriple::make(f.fa, f.fb, 2.0 / (3.0 + t * t));
}

}  // namespace symclone
