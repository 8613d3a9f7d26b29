#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netdecide {

// One point of a discrete loss distribution: a fraction `loss` of the
// machine's value is destroyed with probability `probability`.
struct LossOutcome {
  double loss = 0.0;
  double probability = 0.0;
};

// Discrete probability distribution over loss magnitudes in [0,1].
// Construction validates: probabilities sum to 1 within 1e-12, every loss
// and probability lies in [0,1], and there is at least one outcome.
class LossProfile {
 public:
  static constexpr double kProbabilitySumTolerance = 1e-12;

  explicit LossProfile(std::vector<LossOutcome> outcomes)
      : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) {
      throw std::invalid_argument("loss profile must have at least one outcome");
    }
    double total = 0.0;
    for (const LossOutcome& outcome : outcomes_) {
      if (!(outcome.loss >= 0.0 && outcome.loss <= 1.0)) {
        throw std::invalid_argument("loss value must lie in [0,1], got " +
                                    std::to_string(outcome.loss));
      }
      if (!(outcome.probability >= 0.0 && outcome.probability <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0,1], got " +
                                    std::to_string(outcome.probability));
      }
      total += outcome.probability;
    }
    if (!(total >= 1.0 - kProbabilitySumTolerance &&
          total <= 1.0 + kProbabilitySumTolerance)) {
      throw std::invalid_argument("probabilities must sum to 1, got " +
                                  std::to_string(total));
    }
  }

  // Total damage or none, equally likely.
  static LossProfile all_or_nothing() {
    return LossProfile({{0.0, 0.5}, {1.0, 0.5}});
  }

  static LossProfile point_mass(double loss) {
    return LossProfile({{loss, 1.0}});
  }

  const std::vector<LossOutcome>& outcomes() const { return outcomes_; }

  // E[loss].
  double mean() const {
    double m = 0.0;
    for (const LossOutcome& outcome : outcomes_) {
      m += outcome.loss * outcome.probability;
    }
    return m;
  }

  // E[1 - loss]: mean fraction of value retained when the drawn loss is
  // realized. This is the scaling parameter the utility formulas average.
  double retained_mean() const { return 1.0 - mean(); }

 private:
  std::vector<LossOutcome> outcomes_;
};

inline double profile_mean(const LossProfile& profile) { return profile.mean(); }

}  // namespace netdecide
