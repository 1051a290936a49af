#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symclone/quantum_core.hpp"

namespace symclone {

/// Relative detector efficiencies: eta_a = eff(D_A-)/eff(D_A+), eta_b likewise for block B.
struct EfficiencyPair {
  double eta_a = 1.0;
  double eta_b = 1.0;

  static constexpr double kMin = 0.2;
  static constexpr double kMax = 5.0;

  /// Throws ParameterError outside [kMin, kMax].
  static EfficiencyPair make(double eta_a, double eta_b);
  /// eta = 1 + eps
  static EfficiencyPair from_mismatch(double eps_a, double eps_b) {
    return make(1.0 + eps_a, 1.0 + eps_b);
  }
  EfficiencyPair inverse() const { return {1.0 / eta_a, 1.0 / eta_b}; }
  EfficiencyPair swapped() const { return {eta_b, eta_a}; }
};

/// Joint clicks of (D_Aj, D_Bk). Expected rates are real; sampled counts hold integral values.
struct CoincidenceCounts {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double total() const { return pp + pm + mp + mm; }
  bool operator==(const CoincidenceCounts&) const = default;
};

/// Whether the signal photon carries the basis' psi or psi_perp.
enum class Role { psi, perp };

inline Role role_of(int catalog_index) { return catalog_index % 2 == 0 ? Role::psi : Role::perp; }
inline int basis_of(int catalog_index) { return catalog_index / 2; }

struct MeasurementRecord {
  double t = 0.0;
  int state = 0;  // catalog index
  CoincidenceCounts counts;
  std::optional<EfficiencyPair> true_eta;

  int basis() const { return basis_of(state); }
  Role role() const { return role_of(state); }
};

/// Diagonal of the normalized output state in the (basis.psi, basis.psi_perp)
/// product basis. The + detectors of both blocks project onto basis.psi.
/// Throws ParameterError when `input` is neither basis state.
CoincidenceCounts ideal_probabilities(const PureState& input, const BasisPair& basis, double t);

/// (N p++, N eta_b p+-, N eta_a p-+, N eta_a eta_b p--)
CoincidenceCounts bias_counts(const CoincidenceCounts& expected, const EfficiencyPair& eta,
                              double overall_rate);

/// (eta_a eta_b C++, eta_a C+-, eta_b C-+, C--). Undoes bias_counts up to the
/// common factor eta_a eta_b.
CoincidenceCounts rescale_counts(const CoincidenceCounts& raw, const EfficiencyPair& eta);

/// Independent Poisson draw per entry.
CoincidenceCounts sample_counts(const CoincidenceCounts& expected, std::uint64_t seed);

/// SplitMix64 mix of (root, stream). Record k of a run uses derive_seed(seed, k);
/// t-setting j of a multi-setting run uses derive_seed(root_seed, j).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

/// One record per catalog state, in catalog order. Within each basis, psi and
/// psi_perp are measured with the same detector assignment.
std::vector<MeasurementRecord> run_experiment(double t, const EfficiencyPair& eta,
                                              double counts_per_setting, std::uint64_t seed,
                                              bool noiseless);

}  // namespace symclone
