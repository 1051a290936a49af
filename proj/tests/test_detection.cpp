#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "symclone/cloner_model.hpp"
#include "symclone/detection.hpp"
#include "symclone/errors.hpp"

using namespace symclone;

namespace {

double max_diff(const CoincidenceCounts& a, const CoincidenceCounts& b) {
  return std::max({std::abs(a.pp - b.pp), std::abs(a.pm - b.pm), std::abs(a.mp - b.mp), std::abs(a.mm - b.mm)});
}

CoincidenceCounts flipped(const CoincidenceCounts& c) { return {c.mm, c.mp, c.pm, c.pp}; }

}  // namespace

TEST_SUITE("detection") {

TEST_CASE("efficiency pair validation") {
  CHECK_NOTHROW(EfficiencyPair::make(1.046, 0.840));
  CHECK_THROWS_AS(EfficiencyPair::make(0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(EfficiencyPair::make(1.0, 5.5), ParameterError);
  CHECK_THROWS_AS(EfficiencyPair::make(-1.0, 1.0), ParameterError);
  const EfficiencyPair e = EfficiencyPair::from_mismatch(0.1, -0.2);
  CHECK(e.eta_a == doctest::Approx(1.1));
  CHECK(e.eta_b == doctest::Approx(0.8));
}

TEST_CASE("ideal probabilities") {
  const auto& bases = mub_bases();
  for (const BasisPair& b : bases) {
    const CoincidenceCounts sym = ideal_probabilities(b.psi(), b, 0.0);
    CHECK(max_diff(sym, {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 0.0}) < kAlgebraTol);
    const CoincidenceCounts id = ideal_probabilities(b.psi(), b, 1.0);
    CHECK(max_diff(id, {0.5, 0.0, 0.5, 0.0}) < kAlgebraTol);
  }

  for (int i = 0; i <= 20; ++i) {
    const double t = i / 20.0;
    const Eigen::Vector4d d = machine_triple(t).diagonal();
    const CoincidenceCounts eq11{d(0), d(1), d(2), d(3)};
    for (const BasisPair& b : bases) {
      const CoincidenceCounts on_psi = ideal_probabilities(b.psi(), b, t);
      const CoincidenceCounts on_perp = ideal_probabilities(b.psi_perp(), b, t);
      CHECK(max_diff(on_psi, eq11) < kAlgebraTol);
      CHECK(max_diff(on_perp, flipped(on_psi)) < kAlgebraTol);
      CHECK(std::abs(on_psi.total() - 1.0) < kAlgebraTol);
      CHECK(std::abs(on_perp.total() - 1.0) < kAlgebraTol);
    }
  }

  SUBCASE("covariance holds for arbitrary bases") {
    std::mt19937_64 rng(31);
    for (int n = 0; n < 20; ++n) {
      const PureState psi = oracle::random_state(rng);
      const BasisPair b(psi, psi.orthogonal());
      const double t = std::uniform_real_distribution<double>(0, 1)(rng);
      const Eigen::Vector4d d = machine_triple(t).diagonal();
      CHECK(max_diff(ideal_probabilities(psi, b, t), {d(0), d(1), d(2), d(3)}) < kAlgebraTol);
    }
  }

  CHECK_THROWS_AS(ideal_probabilities(catalog_states()[2], bases[0], 0.5), ParameterError);
  CHECK_THROWS_AS(ideal_probabilities(catalog_states()[0], bases[0], 1.5), ParameterError);
}

TEST_CASE("bias and rescale") {
  const CoincidenceCounts p{0.4, 0.3, 0.2, 0.1};
  CHECK(max_diff(bias_counts(p, {1.0, 1.0}, 1000.0), {400, 300, 200, 100}) < 1e-12);
  const CoincidenceCounts only_a = bias_counts({0.5, 0.0, 0.5, 0.0}, {1.3, 1.0}, 200.0);
  CHECK(max_diff(only_a, {100.0, 0.0, 130.0, 0.0}) < 1e-12);

  CHECK(rescale_counts(p, {1.0, 1.0}) == p);
  const CoincidenceCounts scaled = rescale_counts({100, 100, 100, 100}, {1.046, 0.840});
  CHECK(max_diff(scaled, {87.864, 104.6, 84.0, 100.0}) < 1e-12);

  SUBCASE("rescaling inverts the bias model up to eta_a eta_b N") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.01, 1.0), ue(0.5, 2.0);
    for (int n = 0; n < 20; ++n) {
      CoincidenceCounts q{u(rng), u(rng), u(rng), u(rng)};
      const double s = q.total();
      q = {q.pp / s, q.pm / s, q.mp / s, q.mm / s};
      const EfficiencyPair eta{ue(rng), ue(rng)};
      const double N = 1e4;
      const CoincidenceCounts back = rescale_counts(bias_counts(q, eta, N), eta);
      const double k = eta.eta_a * eta.eta_b * N;
      for (auto [got, want] : {std::pair{back.pp, q.pp}, {back.pm, q.pm}, {back.mp, q.mp}, {back.mm, q.mm}}) {
        CHECK(std::abs(got / (k * want) - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("poisson sampling") {
  CHECK(sample_counts({}, 7) == CoincidenceCounts{});
  const CoincidenceCounts rate{100, 50, 25, 0};
  CHECK(sample_counts(rate, 99) == sample_counts(rate, 99));
  CHECK_FALSE(sample_counts(rate, 99) == sample_counts(rate, 100));
  const CoincidenceCounts one = sample_counts(rate, 5);
  CHECK(one.pp == std::floor(one.pp));
  CHECK(one.mm == 0.0);
  CHECK_THROWS_AS(sample_counts({-1, 0, 0, 0}, 1), ParameterError);

  constexpr int trials = 10000;
  double sum100 = 0.0, sum1000 = 0.0, sq1000 = 0.0;
  for (int i = 0; i < trials; ++i) {
    const CoincidenceCounts c = sample_counts({100.0, 1000.0, 0.0, 0.0}, derive_seed(2024, i));
    sum100 += c.pp;
    sum1000 += c.pm;
    sq1000 += c.pm * c.pm;
  }
  const double mean100 = sum100 / trials;
  CHECK(std::abs(mean100 - 100.0) <= 3.0 * std::sqrt(100.0 / trials));
  const double mean1000 = sum1000 / trials;
  const double var1000 = sq1000 / trials - mean1000 * mean1000;
  CHECK(std::abs(var1000 / mean1000 - 1.0) < 0.05);
}

TEST_CASE("seed derivation") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t root : {0ULL, 1ULL, 2ULL})
    for (std::uint64_t k = 0; k < 100; ++k) seen.insert(derive_seed(root, k));
  CHECK(seen.size() == 300);
  CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("run_experiment protocol shape") {
  const auto recs = run_experiment(0.3, {1.1, 0.9}, 5e4, 17, false);
  REQUIRE(recs.size() == 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(recs[k].state == k);
    CHECK(recs[k].basis() == k / 2);
    CHECK((recs[k].role() == Role::psi) == (k % 2 == 0));
    CHECK(recs[k].t == 0.3);
    REQUIRE(recs[k].true_eta.has_value());
    CHECK(recs[k].true_eta->eta_a == 1.1);
  }
  const auto again = run_experiment(0.3, {1.1, 0.9}, 5e4, 17, false);
  for (int k = 0; k < 6; ++k) CHECK(again[k].counts == recs[k].counts);

  const auto exact = run_experiment(0.3, {1.1, 0.9}, 5e4, 17, true);
  const CoincidenceCounts expected =
      bias_counts(ideal_probabilities(catalog_states()[1], mub_bases()[0], 0.3), {1.1, 0.9}, 5e4);
  CHECK(max_diff(exact[1].counts, expected) < 1e-9);

  CHECK_THROWS_AS(run_experiment(0.3, {1, 1}, 0.0, 1, true), ParameterError);
  CHECK_THROWS_AS(run_experiment(1.3, {1, 1}, 10.0, 1, true), ParameterError);
}

}  // TEST_SUITE
