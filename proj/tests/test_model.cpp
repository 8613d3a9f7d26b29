#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "netdecide/loss_profile.hpp"
#include "netdecide/model.hpp"

using namespace netdecide;
using Catch::Matchers::WithinAbs;

namespace {

ModelParams aon_params(int n, double c, double p, double q) {
  return ModelParams(n, c, p, q, LossProfile::all_or_nothing());
}

// Random valid params, including asymmetric profiles.
ModelParams random_params(std::mt19937& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(0, 40);
  std::uniform_int_distribution<int> outcome_count(1, 4);

  const int outcomes = outcome_count(gen);
  std::vector<LossOutcome> profile;
  double total = 0.0;
  for (int i = 0; i < outcomes; ++i) {
    profile.push_back({unit(gen), unit(gen) + 0.01});
    total += profile.back().probability;
  }
  for (LossOutcome& outcome : profile) outcome.probability /= total;
  // Renormalization leaves a rounding residue; push it into the last entry
  // so the sum is exact.
  double sum_except_last = 0.0;
  for (size_t i = 0; i + 1 < profile.size(); ++i) sum_except_last += profile[i].probability;
  profile.back().probability = 1.0 - sum_except_last;

  return ModelParams(n_dist(gen), unit(gen), unit(gen), unit(gen), LossProfile(profile));
}

}  // namespace

TEST_CASE("profile mean") {
  CHECK(profile_mean(LossProfile::all_or_nothing()) == 0.5);
  CHECK(profile_mean(LossProfile::point_mass(1.0)) == 1.0);
  // hand expectation: 0.2*0.25 + 0.6*0.75 = 0.05 + 0.45
  CHECK_THAT(profile_mean(LossProfile({{0.2, 0.25}, {0.6, 0.75}})), WithinAbs(0.50, 1e-15));
  CHECK_THAT(profile_mean(LossProfile({{0.4, 0.25}, {0.6, 0.75}})), WithinAbs(0.55, 1e-15));
  CHECK_THAT(LossProfile({{0.2, 0.25}, {0.6, 0.75}}).retained_mean(), WithinAbs(0.50, 1e-15));
  CHECK(LossProfile::all_or_nothing().retained_mean() == 0.5);
}

TEST_CASE("loss profile invariants are enforced") {
  CHECK_THROWS_AS(LossProfile({}), std::invalid_argument);
  CHECK_THROWS_AS(LossProfile({{0.5, 0.7}}), std::invalid_argument);          // sum != 1
  CHECK_THROWS_AS(LossProfile({{1.2, 1.0}}), std::invalid_argument);          // loss > 1
  CHECK_THROWS_AS(LossProfile({{-0.1, 1.0}}), std::invalid_argument);         // loss < 0
  CHECK_THROWS_AS(LossProfile({{0.5, -0.2}, {0.5, 1.2}}), std::invalid_argument);
  CHECK_NOTHROW(LossProfile({{0.0, 0.5}, {1.0, 0.5 + 1e-13}}));  // within tolerance
}

TEST_CASE("model params invariants are enforced") {
  const LossProfile profile = LossProfile::all_or_nothing();
  CHECK_THROWS_AS(ModelParams(-1, 0.5, 0.5, 0.1, profile), std::domain_error);
  CHECK_THROWS_AS(ModelParams(5, 1.2, 0.5, 0.1, profile), std::domain_error);
  CHECK_THROWS_AS(ModelParams(5, -0.1, 0.5, 0.1, profile), std::domain_error);
  CHECK_THROWS_AS(ModelParams(5, 0.5, 1.5, 0.1, profile), std::domain_error);
  CHECK_THROWS_AS(ModelParams(5, 0.5, 0.5, -0.1, profile), std::domain_error);
  CHECK_NOTHROW(ModelParams(0, 0.0, 0.0, 0.0, profile));
  CHECK_NOTHROW(ModelParams(5, 1.0, 1.0, 1.0, profile));
}

TEST_CASE("per-user protect utility") {
  const ModelParams params = aon_params(10, 0.4, 0.5, 0.1);
  CHECK_THAT(user_utility_protect(0.5, params, 0), WithinAbs(0.1, 1e-15));
  CHECK_THAT(user_utility_protect(0.5, params, 2), WithinAbs(0.005, 1e-15));
  const ModelParams free_params = aon_params(10, 0.0, 0.5, 0.0);
  CHECK(user_utility_protect(1.0, free_params, 5) == 1.0);

  CHECK_THROWS_AS(user_utility_protect(0.5, params, -1), std::out_of_range);
  CHECK_THROWS_AS(user_utility_protect(0.5, params, 11), std::out_of_range);
  CHECK_THROWS_AS(user_utility_protect(1.5, params, 0), std::domain_error);
}

TEST_CASE("per-user defect utility") {
  // 0.25 * 0.9^3
  CHECK_THAT(user_utility_defect(0.5, aon_params(10, 0.4, 0.5, 0.1), 3),
             WithinAbs(0.182250, 1e-12));
  CHECK(user_utility_defect(0.5, aon_params(10, 0.4, 1.0, 0.1), 3) == 0.0);
  CHECK(user_utility_defect(0.5, aon_params(10, 0.4, 0.0, 0.0), 0) == 0.5);
  CHECK_THROWS_AS(user_utility_defect(0.5, aon_params(3, 0.4, 0.5, 0.1), 4), std::out_of_range);
}

TEST_CASE("system utility") {
  const ModelParams params = aon_params(5, 0.2, 0.5, 0.1);

  const StrategyOutcome all_protect = system_utility(params, 0);
  CHECK_THAT(all_protect.system_utility, WithinAbs(1.5, 1e-12));
  CHECK(all_protect.defect_group_utility == 0.0);

  const StrategyOutcome all_defect = system_utility(params, 5);
  CHECK_THAT(all_defect.system_utility, WithinAbs(0.7381125, 1e-12));
  CHECK(all_defect.protect_group_utility == 0.0);

  const StrategyOutcome empty = system_utility(aon_params(0, 0.7, 0.5, 0.1), 0);
  CHECK(empty.system_utility == 0.0);

  CHECK_THROWS_AS(system_utility(params, 6), std::out_of_range);
  CHECK_THROWS_AS(system_utility(params, -1), std::out_of_range);
}

TEST_CASE("boundary consistency on randomized params") {
  std::mt19937 gen(20240811);
  for (int i = 0; i < 500; ++i) {
    const ModelParams params = random_params(gen);
    const StrategyOutcome at_zero = system_utility(params, 0);
    const StrategyOutcome at_n = system_utility(params, params.n_users);

    CHECK_THAT(at_zero.system_utility, WithinAbs(all_protect_utility(params), 1e-12));
    CHECK_THAT(at_n.system_utility, WithinAbs(all_defect_utility(params), 1e-12));
    CHECK_THAT(at_zero.protect_group_utility + at_zero.defect_group_utility,
               WithinAbs(at_zero.system_utility, 1e-12));
    CHECK_THAT(at_n.protect_group_utility + at_n.defect_group_utility,
               WithinAbs(at_n.system_utility, 1e-12));
  }
}

TEST_CASE("all-protect utility is linear and monotone in N") {
  CHECK(all_protect_utility(aon_params(10, 0.5, 0.5, 0.1)) == 0.0);
  CHECK_THAT(all_protect_utility(aon_params(4, 0.4, 0.5, 0.1)), WithinAbs(0.4, 1e-12));
  CHECK_THAT(all_protect_utility(aon_params(10, 0.2, 0.5, 0.1)), WithinAbs(3.0, 1e-12));

  for (int n : {2, 7, 30}) {
    const double at_one = all_protect_utility(aon_params(1, 0.3, 0.5, 0.1));
    CHECK_THAT(all_protect_utility(aon_params(n, 0.3, 0.5, 0.1)), WithinAbs(n * at_one, 1e-12));
  }
  // increasing iff c < m, non-increasing iff c >= m
  for (int n = 1; n < 20; ++n) {
    CHECK(all_protect_utility(aon_params(n + 1, 0.2, 0.5, 0.1)) >
          all_protect_utility(aon_params(n, 0.2, 0.5, 0.1)));
    CHECK(all_protect_utility(aon_params(n + 1, 0.5, 0.5, 0.1)) <=
          all_protect_utility(aon_params(n, 0.5, 0.5, 0.1)));
    CHECK(all_protect_utility(aon_params(n + 1, 0.7, 0.5, 0.1)) <
          all_protect_utility(aon_params(n, 0.7, 0.5, 0.1)));
  }
}

TEST_CASE("all-defect utility examples and decay") {
  CHECK(all_defect_utility(aon_params(0, 0.2, 0.5, 0.1)) == 0.0);
  CHECK_THAT(all_defect_utility(aon_params(9, 0.2, 0.5, 0.1)), WithinAbs(0.87169610025, 1e-12));
  CHECK(all_defect_utility(aon_params(200, 0.2, 0.5, 0.1)) < 1e-6);
}

TEST_CASE("all-defect utility ties exactly at N=9 and N=10 for p=0.5, q=0.1") {
  const double at_9 = all_defect_utility(aon_params(9, 0.2, 0.5, 0.1));
  const double at_10 = all_defect_utility(aon_params(10, 0.2, 0.5, 0.1));
  // (10/9) * 0.9 = 1
  CHECK_THAT(at_9, WithinAbs(at_10, 1e-12));
}

TEST_CASE("protect utility is linear in the scale draw") {
  // Feeding each profile outcome through user_utility_protect and averaging
  // with the profile weights must reproduce -c + E[x]*(1-q)^k; enumerated,
  // no sampling.
  const std::vector<LossProfile> profiles = {
      LossProfile::all_or_nothing(),
      LossProfile({{0.1, 0.3}, {0.7, 0.45}, {1.0, 0.25}}),
  };
  for (const LossProfile& profile : profiles) {
    for (int k : {0, 3}) {
      const ModelParams params(8, 0.35, 0.5, 0.15, profile);
      double averaged = 0.0;
      for (const LossOutcome& outcome : profile.outcomes()) {
        averaged += outcome.probability * user_utility_protect(outcome.loss, params, k);
      }
      const double expected =
          -params.protection_cost +
          profile_mean(profile) * detail::pow_int(1.0 - params.internal_infection_prob, k);
      CHECK_THAT(averaged, WithinAbs(expected, 1e-12));
    }
  }
}
