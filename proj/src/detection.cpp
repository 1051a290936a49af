#include "symclone/detection.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "symclone/cloner_model.hpp"
#include "symclone/errors.hpp"

namespace symclone {

EfficiencyPair EfficiencyPair::make(double eta_a, double eta_b) {
  for (double eta : {eta_a, eta_b}) {
    if (!(eta >= kMin && eta <= kMax)) {
      std::ostringstream os;
      os << "relative efficiency " << eta << " outside [" << kMin << ", " << kMax << "]";
      throw ParameterError(os.str());
    }
  }
  return {eta_a, eta_b};
}

CoincidenceCounts ideal_probabilities(const PureState& input, const BasisPair& basis, double t) {
  if (!input.same_ray(basis.psi()) && !input.same_ray(basis.psi_perp())) {
    throw ParameterError("input state is not a member of the analysis basis");
  }
  const DensityMatrix4 rho = apply_cloner(input, t).rho_out.normalized();
  auto prob = [&](int j, int k) {
    Eigen::Vector4cd v;
    const Eigen::Vector2cd& a = basis[j].vector();
    const Eigen::Vector2cd& b = basis[k].vector();
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) v(two_qubit_index(x, y)) = a(x) * b(y);
    // Round-off can leave an exactly-zero outcome slightly negative.
    return std::max(0.0, v.dot(rho.matrix() * v).real());
  };
  return {prob(0, 0), prob(0, 1), prob(1, 0), prob(1, 1)};
}

CoincidenceCounts bias_counts(const CoincidenceCounts& expected, const EfficiencyPair& eta,
                              double overall_rate) {
  const double n = overall_rate;
  return {n * expected.pp, n * eta.eta_b * expected.pm, n * eta.eta_a * expected.mp,
          n * eta.eta_a * eta.eta_b * expected.mm};
}

CoincidenceCounts rescale_counts(const CoincidenceCounts& raw, const EfficiencyPair& eta) {
  return {eta.eta_a * eta.eta_b * raw.pp, eta.eta_a * raw.pm, eta.eta_b * raw.mp, raw.mm};
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CoincidenceCounts sample_counts(const CoincidenceCounts& expected, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](double mean) -> double {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
      throw ParameterError("Poisson mean must be finite and nonnegative");
    }
    if (mean == 0.0) return 0.0;
    std::poisson_distribution<long long> dist(mean);
    return static_cast<double>(dist(rng));
  };
  CoincidenceCounts out;
  out.pp = draw(expected.pp);
  out.pm = draw(expected.pm);
  out.mp = draw(expected.mp);
  out.mm = draw(expected.mm);
  return out;
}

std::vector<MeasurementRecord> run_experiment(double t, const EfficiencyPair& eta,
                                              double counts_per_setting, std::uint64_t seed,
                                              bool noiseless) {
  check_transmittance(t);
  if (!(counts_per_setting > 0.0) || !std::isfinite(counts_per_setting)) {
    throw ParameterError("counts per setting must be positive");
  }
  const auto& states = catalog_states();
  const auto& bases = mub_bases();
  std::vector<MeasurementRecord> records;
  records.reserve(kCatalogSize);
  for (int k = 0; k < kCatalogSize; ++k) {
    const CoincidenceCounts expected =
        bias_counts(ideal_probabilities(states[k], bases[basis_of(k)], t), eta, counts_per_setting);
    MeasurementRecord rec;
    rec.t = t;
    rec.state = k;
    rec.counts = noiseless ? expected : sample_counts(expected, derive_seed(seed, k));
    rec.true_eta = eta;
    records.push_back(rec);
  }
  return records;
}

}  // namespace symclone
