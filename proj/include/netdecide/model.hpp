#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "netdecide/loss_profile.hpp"
#include "netdecide/numeric.hpp"

namespace netdecide {

// Homogeneous protection scenario: N machines on one network, a normalized
// protection cost c in [0,1], probability p of infection from outside for an
// unprotected machine, probability q that any one unprotected machine causes
// a given machine's infection through the local network, and one loss
// profile shared by every user.
struct ModelParams {
  int n_users;                     // N
  double protection_cost;          // c
  double external_infection_prob;  // p
  double internal_infection_prob;  // q
  LossProfile loss_profile;

  ModelParams(int n_users_, double protection_cost_, double external_infection_prob_,
              double internal_infection_prob_, LossProfile loss_profile_)
      : n_users(n_users_),
        protection_cost(protection_cost_),
        external_infection_prob(external_infection_prob_),
        internal_infection_prob(internal_infection_prob_),
        loss_profile(std::move(loss_profile_)) {
    if (n_users < 0) {
      throw std::domain_error("n must be >= 0, got " + std::to_string(n_users));
    }
    if (!(protection_cost >= 0.0 && protection_cost <= 1.0)) {
      throw std::domain_error("c must lie in [0,1], got " + std::to_string(protection_cost));
    }
    if (!(external_infection_prob >= 0.0 && external_infection_prob <= 1.0)) {
      throw std::domain_error("p must lie in [0,1], got " +
                              std::to_string(external_infection_prob));
    }
    if (!(internal_infection_prob >= 0.0 && internal_infection_prob <= 1.0)) {
      throw std::domain_error("q must lie in [0,1], got " +
                              std::to_string(internal_infection_prob));
    }
  }

  // Mean retained-value scaler, shared by protectors and defectors in the
  // homogeneous population (m_avg = n_avg).
  double scaler_mean() const { return loss_profile.retained_mean(); }
};

// System-wide expected utility for one split into protectors and defectors.
struct StrategyOutcome {
  int defector_count = 0;  // k
  double system_utility = 0.0;
  double protect_group_utility = 0.0;
  double defect_group_utility = 0.0;
};

namespace detail {

inline void check_defector_count(const ModelParams& params, int defector_count) {
  if (defector_count < 0 || defector_count > params.n_users) {
    throw std::out_of_range("k must lie in [0, n]; got k=" + std::to_string(defector_count) +
                            " with n=" + std::to_string(params.n_users));
  }
}

inline void check_scale(double scale, const char* name) {
  if (!(scale >= 0.0 && scale <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0,1], got " +
                            std::to_string(scale));
  }
}

}  // namespace detail

// Expected utility of one protecting user when k users defect:
//   -c + m * (1-q)^k
inline double user_utility_protect(double scale_m, const ModelParams& params,
                                   int defector_count) {
  detail::check_defector_count(params, defector_count);
  detail::check_scale(scale_m, "scale_m");
  return -params.protection_cost +
         scale_m * detail::pow_int(1.0 - params.internal_infection_prob, defector_count);
}

// Expected utility of one defecting user when k users defect:
//   n * (1-p) * (1-q)^k
inline double user_utility_defect(double scale_n, const ModelParams& params,
                                  int defector_count) {
  detail::check_defector_count(params, defector_count);
  detail::check_scale(scale_n, "scale_n");
  return scale_n * (1.0 - params.external_infection_prob) *
         detail::pow_int(1.0 - params.internal_infection_prob, defector_count);
}

// System utility with k of the N users defecting:
//   U(k) = (N-k) * (-c + m*(1-q)^k) + k * m*(1-p)*(1-q)^k
inline StrategyOutcome system_utility(const ModelParams& params, int defector_count) {
  detail::check_defector_count(params, defector_count);
  const double mean_scale = params.scaler_mean();
  const double internal_survival =
      detail::pow_int(1.0 - params.internal_infection_prob, defector_count);
  const int protectors = params.n_users - defector_count;

  StrategyOutcome outcome;
  outcome.defector_count = defector_count;
  outcome.protect_group_utility =
      protectors * (-params.protection_cost + mean_scale * internal_survival);
  outcome.defect_group_utility = defector_count * mean_scale *
                                 (1.0 - params.external_infection_prob) * internal_survival;
  outcome.system_utility = outcome.protect_group_utility + outcome.defect_group_utility;
  return outcome;
}

// U(0) = N * (m - c): everyone protects.
inline double all_protect_utility(const ModelParams& params) {
  if (params.n_users == 0) return 0.0;
  return params.n_users * (params.scaler_mean() - params.protection_cost);
}

// U(N) = N * m * (1-p) * (1-q)^N: nobody protects.
inline double all_defect_utility(const ModelParams& params) {
  if (params.n_users == 0) return 0.0;
  return params.n_users * params.scaler_mean() * (1.0 - params.external_infection_prob) *
         detail::pow_int(1.0 - params.internal_infection_prob, params.n_users);
}

}  // namespace netdecide
