#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netdecide/model.hpp"

namespace netdecide {

// Ties between points of the utility curve.
inline constexpr double kArgmaxTieTolerance = 1e-12;
// Indifference between the two boundary strategies; wider because the
// comparison subtracts two O(N) quantities.
inline constexpr double kStrategyTieTolerance = 1e-9;

struct OptimizationResult {
  int best_k = 0;
  double best_utility = 0.0;
  // True when some maximizer within kArgmaxTieTolerance is k=0 or k=N.
  bool boundary_optimal = false;
  // (k, U(k)) for k = 0..N.
  std::vector<std::pair<int, double>> full_curve;
};

// Exhaustive search over k = 0..N. Ties within kArgmaxTieTolerance resolve
// to the smallest k.
inline OptimizationResult optimal_k(const ModelParams& params) {
  OptimizationResult result;
  result.full_curve.reserve(static_cast<size_t>(params.n_users) + 1);

  double max_utility = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= params.n_users; ++k) {
    const double utility = system_utility(params, k).system_utility;
    result.full_curve.emplace_back(k, utility);
    if (utility > max_utility) max_utility = utility;
  }
  for (int k = 0; k <= params.n_users; ++k) {
    if (result.full_curve[k].second >= max_utility - kArgmaxTieTolerance) {
      result.best_k = k;
      result.best_utility = result.full_curve[k].second;
      break;
    }
  }
  result.boundary_optimal =
      result.full_curve.front().second >= max_utility - kArgmaxTieTolerance ||
      result.full_curve.back().second >= max_utility - kArgmaxTieTolerance;
  return result;
}

enum class DominantStrategy { Protect, Defect, Indifferent };

// Compares the two boundary strategies k=0 and k=N. An empty network has no
// strategy to distinguish and is rejected.
inline DominantStrategy dominant_strategy(const ModelParams& params) {
  if (params.n_users < 1) {
    throw std::domain_error("n must be >= 1 to compare strategies, got 0");
  }
  const double protect = all_protect_utility(params);
  const double defect = all_defect_utility(params);
  if (std::fabs(protect - defect) <= kStrategyTieTolerance) {
    return DominantStrategy::Indifferent;
  }
  return protect > defect ? DominantStrategy::Protect : DominantStrategy::Defect;
}

}  // namespace netdecide
