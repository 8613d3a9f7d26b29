#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "netdecide/model.hpp"
#include "netdecide/rng.hpp"

namespace netdecide {

struct SimulationConfig {
  ModelParams params;
  int defector_count;  // k
  long long trials;
  uint64_t seed;

  SimulationConfig(ModelParams params_, int defector_count_, long long trials_, uint64_t seed_)
      : params(std::move(params_)),
        defector_count(defector_count_),
        trials(trials_),
        seed(seed_) {
    detail::check_defector_count(params, defector_count);
    if (trials < 1) {
      throw std::domain_error("trials must be >= 1, got " + std::to_string(trials));
    }
  }
};

struct SimulationReport {
  double empirical_mean_system_utility = 0.0;
  double analytic_expectation = 0.0;
  double std_error = 0.0;  // 0 when trials == 1
  long long trials = 0;
  uint64_t seed = 0;
};

// Draw a loss from the profile by inverting the cumulative distribution.
inline double sample_loss(const LossProfile& profile, SplitMix64& stream) {
  const double u = stream.next_double();
  double cumulative = 0.0;
  for (const LossOutcome& outcome : profile.outcomes()) {
    cumulative += outcome.probability;
    if (u < cumulative) return outcome.loss;
  }
  // u landed in the 1e-12 slack the probability-sum tolerance allows.
  return profile.outcomes().back().loss;
}

// One realized round of the scenario. Each of the N-k protectors draws a
// loss x (retaining scale 1-x on survival) and survives internal
// transmission with probability (1-q)^k; each of the k defectors draws a
// loss and must additionally survive external attack with probability 1-p.
// Draw order is fixed -- protectors before defectors; per user the loss
// comes first, then the survival draws (a defector always consumes both) --
// because changing it changes every seeded result.
inline double simulate_round(const SimulationConfig& config, SplitMix64& stream) {
  const ModelParams& params = config.params;
  const int defectors = config.defector_count;
  const int protectors = params.n_users - defectors;
  const double internal_survival =
      detail::pow_int(1.0 - params.internal_infection_prob, defectors);
  const double external_survival = 1.0 - params.external_infection_prob;

  double total = 0.0;
  for (int i = 0; i < protectors; ++i) {
    const double retained = 1.0 - sample_loss(params.loss_profile, stream);
    const bool survives = stream.bernoulli(internal_survival);
    total += -params.protection_cost + (survives ? retained : 0.0);
  }
  for (int i = 0; i < defectors; ++i) {
    const double retained = 1.0 - sample_loss(params.loss_profile, stream);
    const bool survives_outside = stream.bernoulli(external_survival);
    const bool survives_inside = stream.bernoulli(internal_survival);
    total += (survives_outside && survives_inside) ? retained : 0.0;
  }
  return total;
}

namespace detail {

struct BlockMoments {
  double sum = 0.0;
  double sum_squares = 0.0;
};

inline BlockMoments simulate_block(const SimulationConfig& config, long long first,
                                   long long last) {
  BlockMoments moments;
  for (long long trial = first; trial < last; ++trial) {
    SplitMix64 stream = trial_stream(config.seed, static_cast<uint64_t>(trial));
    const double value = simulate_round(config, stream);
    moments.sum += value;
    moments.sum_squares += value * value;
  }
  return moments;
}

}  // namespace detail

// Averages simulate_round over config.trials independent rounds. Reports are
// bit-identical for a fixed (seed, trials) regardless of n_threads: trials
// are split into fixed blocks of 8192, each block is summed in trial order,
// and block sums are combined in block order.
inline SimulationReport run_simulation(const SimulationConfig& config,
                                       unsigned n_threads = 1) {
  constexpr long long kBlockSize = 8192;
  const long long trials = config.trials;
  const long long n_blocks = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<detail::BlockMoments> blocks(static_cast<size_t>(n_blocks));

  auto block_range = [&](long long block) {
    const long long first = block * kBlockSize;
    const long long last = first + kBlockSize < trials ? first + kBlockSize : trials;
    return std::pair<long long, long long>(first, last);
  };

  if (n_threads <= 1 || n_blocks == 1) {
    for (long long block = 0; block < n_blocks; ++block) {
      const auto [first, last] = block_range(block);
      blocks[static_cast<size_t>(block)] = detail::simulate_block(config, first, last);
    }
  } else {
    std::atomic<long long> next_block{0};
    auto worker = [&] {
      for (;;) {
        const long long block = next_block.fetch_add(1);
        if (block >= n_blocks) return;
        const auto [first, last] = block_range(block);
        blocks[static_cast<size_t>(block)] = detail::simulate_block(config, first, last);
      }
    };
    std::vector<std::thread> pool;
    const unsigned count = n_threads < static_cast<unsigned>(n_blocks)
                               ? n_threads
                               : static_cast<unsigned>(n_blocks);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  double sum = 0.0;
  double sum_squares = 0.0;
  for (const detail::BlockMoments& block : blocks) {
    sum += block.sum;
    sum_squares += block.sum_squares;
  }

  SimulationReport report;
  report.trials = trials;
  report.seed = config.seed;
  report.empirical_mean_system_utility = sum / static_cast<double>(trials);
  report.analytic_expectation = system_utility(config.params, config.defector_count).system_utility;
  if (trials > 1) {
    const double n = static_cast<double>(trials);
    double variance = (sum_squares - sum * sum / n) / (n - 1.0);
    if (variance < 0.0) variance = 0.0;  // cancellation on near-constant data
    report.std_error = std::sqrt(variance / n);
  }
  return report;
}

}  // namespace netdecide
