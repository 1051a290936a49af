#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symclone/cloner_model.hpp"
#include "symclone/detection.hpp"
#include "symclone/errors.hpp"
#include "symclone/estimation.hpp"
#include "symclone/robustness.hpp"

using namespace symclone;

namespace {

MachineTriple random_machine(std::mt19937_64& rng) {
  // Uniform on the simplex of the four diagonal elements.
  std::exponential_distribution<double> e(1.0);
  double w[4];
  double s = 0;
  for (double& x : w) s += (x = e(rng));
  const double p = w[0] / s;
  return MachineTriple::make(p + w[1] / s, p + w[2] / s, p);
}

double mean_at(const MachineTriple& m, double ea, double eb) {
  return biased_mean(m, MismatchPair{ea, eb}.efficiency());
}

}  // namespace

TEST_SUITE("robustness") {

TEST_CASE("exact biased fidelities") {
  const MachineTriple sym = MachineTriple::symmetric();
  CHECK(biased_fidelity_psi(sym, {1, 1}) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(biased_fidelity_perp(sym, {1, 1}) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(biased_mean(sym, {1, 1}) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));

  // eta_A = 1, eta_B = 0.9: f_A(psi) = (2/3 + 0.9/6)/(2/3 + 0.9/6 + 1/6) = 4.9/5.9 = 49/59
  const double low = biased_fidelity_psi(sym, {1.0, 0.9});
  CHECK(low == doctest::Approx(49.0 / 59.0).epsilon(1e-14));
  CHECK(low < 5.0 / 6.0);
  CHECK(biased_fidelity_perp(sym, {1.0, 0.9}) > 5.0 / 6.0);

  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> ue(0.5, 2.0);
  for (int n = 0; n < 50; ++n) {
    const MachineTriple m = random_machine(rng);
    const EfficiencyPair eta{ue(rng), ue(rng)};
    CHECK(std::abs(biased_fidelity_psi(m, eta.inverse()) - biased_fidelity_perp(m, eta)) < 1e-14);
  }
  CHECK_THROWS_AS(biased_fidelity_psi(sym, {0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(MismatchPair::make(-1.0, 0.0), ParameterError);
}

TEST_CASE("exact formulas match the simulated measurement") {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> ut(0.0, 1.0), ue(0.6, 1.6);
  for (int n = 0; n < 50; ++n) {
    const double t = ut(rng);
    const EfficiencyPair eta{ue(rng), ue(rng)};
    const MachineTriple m = machine_triple(t);
    const auto recs = run_experiment(t, eta, 1.0, 0, true);
    const CloneAnalysis a = clone_a_analysis(m, eta);
    const CloneAnalysis b = clone_b_analysis(m, eta);
    for (int basis = 0; basis < kBasisCount; ++basis) {
      const CloneFidelities on_psi = fidelities_from_counts(recs[2 * basis].counts, Role::psi);
      const CloneFidelities on_perp = fidelities_from_counts(recs[2 * basis + 1].counts, Role::perp);
      CHECK(std::abs(on_psi.fa - a.f_psi) < 1e-12);
      CHECK(std::abs(on_perp.fa - a.f_perp) < 1e-12);
      CHECK(std::abs(on_psi.fb - b.f_psi) < 1e-12);
      CHECK(std::abs(on_perp.fb - b.f_perp) < 1e-12);
      CHECK(std::abs(0.5 * (on_psi.fa + on_perp.fa) - a.mean) < 1e-12);
    }
  }
}

TEST_CASE("symmetric machine coefficients and bound") {
  const QuadraticErrorForm f = taylor_form(MachineTriple::symmetric());
  CHECK(std::abs(f.coeff_aa + 5.0 / 108.0) < 1e-15);
  CHECK(std::abs(f.coeff_ab - 1.0 / 54.0) < 1e-15);
  CHECK(std::abs(f.coeff_bb - 1.0 / 108.0) < 1e-15);
  CHECK(std::abs(f.bound_factor() - (2.0 + std::sqrt(10.0)) / 108.0) < 1e-15);
  CHECK(f.bound_factor() == doctest::Approx(0.04781).epsilon(1e-4));
  CHECK(error_bound(f, {0.0, 0.0}) == 0.0);
  CHECK(f({0.0, 0.0}) == 0.0);

  const QuadraticErrorForm trivial = taylor_form(machine_triple(1.0));
  CHECK(trivial.coeff_aa == 0.0);
  // (2 F_A - 1)(F_A F_B - P) = 0 * 0, (P - F_A F_B)(1 - 2 F_B)/2 = 0
  CHECK(trivial.coeff_ab == 0.0);
  CHECK(trivial.coeff_bb == 0.0);

  const double err = biased_mean(MachineTriple::symmetric(), {1.1, 1.0}) - 5.0 / 6.0;
  CHECK(std::abs(err) > 2.5e-4);
  CHECK(std::abs(err) < 1e-3);
  CHECK(err < 0.0);
}

TEST_CASE("eigenvalue bound dominates the quadratic form") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int n = 0; n < 1000; ++n) {
    const QuadraticErrorForm f = taylor_form(random_machine(rng));
    const MismatchPair eps{u(rng), u(rng)};
    CHECK(std::abs(f(eps)) <= error_bound(f, eps) + 1e-15);
  }
}

TEST_CASE("linear terms cancel") {
  std::mt19937_64 rng(54);
  constexpr double h = 1e-5;
  for (int n = 0; n < 50; ++n) {
    const MachineTriple m = random_machine(rng);
    const double ga = oracle::central_diff([&](double x) { return mean_at(m, x, 0.0); }, 0.0, h);
    const double gb = oracle::central_diff([&](double x) { return mean_at(m, 0.0, x); }, 0.0, h);
    CHECK(std::abs(ga) < 1e-8);
    CHECK(std::abs(gb) < 1e-8);
  }
}

TEST_CASE("Taylor coefficients agree with numerical second derivatives") {
  std::mt19937_64 rng(55);
  constexpr double h = 1e-4;
  for (int n = 0; n < 50; ++n) {
    const MachineTriple m = random_machine(rng);
    const QuadraticErrorForm f = taylor_form(m);
    const double f0 = mean_at(m, 0, 0);
    const double d_aa = (mean_at(m, h, 0) - 2 * f0 + mean_at(m, -h, 0)) / (h * h);
    const double d_bb = (mean_at(m, 0, h) - 2 * f0 + mean_at(m, 0, -h)) / (h * h);
    const double d_ab = (mean_at(m, h, h) - mean_at(m, h, -h) - mean_at(m, -h, h) + mean_at(m, -h, -h)) / (4 * h * h);
    CHECK(std::abs(2 * f.coeff_aa - d_aa) < 1e-6);
    CHECK(std::abs(2 * f.coeff_bb - d_bb) < 1e-6);
    CHECK(std::abs(f.coeff_ab - d_ab) < 1e-6);
  }
}

TEST_CASE("residual beyond second order scales cubically") {
  const MachineTriple m = MachineTriple::symmetric();
  const QuadraticErrorForm f = taylor_form(m);
  // Fit K on the inner grid, then confirm the outer grid stays within 5x the fitted cubic term.
  double k = 0;
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j) {
      if (i == 0 && j == 0) continue;
      const double ea = 0.005 * i, eb = 0.005 * j;
      const double r = std::abs(mean_at(m, ea, eb) - m.fa - f({ea, eb}));
      k = std::max(k, r / std::pow(std::abs(ea) + std::abs(eb), 3));
    }
  CHECK(k > 0.0);
  CHECK(k < 1.0);
  for (int i = -10; i <= 10; ++i)
    for (int j = -10; j <= 10; ++j) {
      const double ea = 0.01 * i, eb = 0.01 * j;
      const double r = std::abs(mean_at(m, ea, eb) - m.fa - f({ea, eb}));
      CHECK(r <= 5.0 * k * std::pow(std::abs(ea) + std::abs(eb), 3) + 1e-15);
    }
}

TEST_CASE("clone B analysis") {
  const MachineTriple sym = MachineTriple::symmetric();
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> ue(0.7, 1.3);
  for (int n = 0; n < 20; ++n) {
    const EfficiencyPair eta{ue(rng), ue(rng)};
    const CloneAnalysis b = clone_b_analysis(sym, eta);
    const CloneAnalysis a_swapped = clone_a_analysis(sym, eta.swapped());
    CHECK(std::abs(b.mean - a_swapped.mean) < 1e-15);
    CHECK(std::abs(b.quadratic_error - a_swapped.quadratic_error) < 1e-15);
  }
  const MachineTriple m = machine_triple(0.4);
  CHECK(std::abs(clone_b_analysis(m, {1, 1}).mean - m.fb) < 1e-15);
  CHECK(std::abs(clone_b_analysis(m, {1, 1}).exact_error) < 1e-15);
}

}  // TEST_SUITE
