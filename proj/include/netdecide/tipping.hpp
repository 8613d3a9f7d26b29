#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netdecide/numeric.hpp"

namespace netdecide {

// Scaler mean of the all-or-nothing loss profile; the default everywhere a
// tipping formula needs m_avg.
inline constexpr double kAllOrNothingScalerMean = 0.5;

// Half-width of the cost band around the threshold curve classified as
// Boundary. N * kRegionBoundaryBand stays below kStrategyTieTolerance for
// every network size the engine targets.
inline constexpr double kRegionBoundaryBand = 1e-12;

namespace detail {

inline void check_tipping_domain(double p, double q, double scaler_mean) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw std::domain_error("p must lie in [0,1), got " + std::to_string(p));
  }
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("q must lie strictly inside (0,1), got " + std::to_string(q));
  }
  if (!(scaler_mean > 0.0 && scaler_mean <= 1.0)) {
    throw std::domain_error("scaler mean must lie in (0,1], got " +
                            std::to_string(scaler_mean));
  }
}

inline void check_cost(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::domain_error("c must lie in [0,1], got " + std::to_string(c));
  }
}

inline void check_network_size(int n_users) {
  if (n_users < 1) {
    throw std::domain_error("n must be >= 1, got " + std::to_string(n_users));
  }
}

}  // namespace detail

enum class TippingAbsence { AlwaysProtect, AlwaysDefect, DegenerateParams };

inline const char* to_string(TippingAbsence reason) {
  switch (reason) {
    case TippingAbsence::AlwaysProtect: return "always-protect";
    case TippingAbsence::AlwaysDefect: return "always-defect";
    case TippingAbsence::DegenerateParams: return "degenerate-params";
  }
  return "unknown";
}

// Real-valued network size at which the all-protect and all-defect system
// utilities cross, or the reason no such size exists.
struct TippingPointResult {
  bool exists = false;
  double crossing_n = 0.0;  // > 0 and finite when exists
  TippingAbsence reason_absent = TippingAbsence::AlwaysDefect;

  static TippingPointResult at(double crossing_n) {
    TippingPointResult result;
    result.exists = true;
    result.crossing_n = crossing_n;
    return result;
  }
  static TippingPointResult absent(TippingAbsence reason) {
    TippingPointResult result;
    result.reason_absent = reason;
    return result;
  }
};

// Solves U_protect(N) = U_defect(N) for real N:
//   N*(m - c) = N*m*(1-p)*(1-q)^N  =>  N = log_{1-q}((m-c) / (m*(1-p)))
// With the all-or-nothing m = 0.5 the argument reduces to (1-2c)/(1-p).
// The crossing exists only when the log argument lies in (0,1): an argument
// <= 0 means c >= m (protection can never pay), an argument >= 1 puts the
// crossing at N <= 0 (protection dominates for every N >= 1). Degenerate
// parameters (p = 1, q = 0, q = 1) are rejected, not limit-evaluated.
inline TippingPointResult tipping_point_n(double c, double p, double q,
                                          double scaler_mean = kAllOrNothingScalerMean) {
  detail::check_cost(c);
  detail::check_tipping_domain(p, q, scaler_mean);
  const double argument = (scaler_mean - c) / (scaler_mean * (1.0 - p));
  if (argument <= 0.0) return TippingPointResult::absent(TippingAbsence::AlwaysDefect);
  if (argument >= 1.0) return TippingPointResult::absent(TippingAbsence::AlwaysProtect);
  return TippingPointResult::at(std::log(argument) / std::log(1.0 - q));
}

// Protection cost at which the two boundary strategies tie for network size
// N: c*(N) = m - m*(1-p)*(1-q)^N. Protection dominates below it, defection
// above. Strictly increasing in N with limit m.
inline double threshold_cost(int n_users, double p, double q,
                             double scaler_mean = kAllOrNothingScalerMean) {
  detail::check_network_size(n_users);
  detail::check_tipping_domain(p, q, scaler_mean);
  return scaler_mean -
         scaler_mean * (1.0 - p) * detail::pow_int(1.0 - q, n_users);
}

// Open interval of costs whose tipping crossing lands in [min_n, max_n].
struct ExistenceInterval {
  double c_low = 0.0;
  double c_high = 0.0;
  bool empty() const { return !(c_low < c_high); }
};

// max_n omitted means unbounded: the upper endpoint is then the scaler mean,
// the supremum of the threshold curve.
inline ExistenceInterval existence_interval(double p, double q, int min_n,
                                            std::optional<int> max_n = std::nullopt,
                                            double scaler_mean = kAllOrNothingScalerMean) {
  if (min_n < 1) {
    throw std::domain_error("min_n must be >= 1, got " + std::to_string(min_n));
  }
  if (max_n && *max_n < min_n) {
    throw std::domain_error("max_n must be >= min_n, got " + std::to_string(*max_n));
  }
  ExistenceInterval interval;
  interval.c_low = threshold_cost(min_n, p, q, scaler_mean);
  interval.c_high = max_n ? threshold_cost(*max_n, p, q, scaler_mean) : scaler_mean;
  return interval;
}

enum class Region { AreaOfProtection, AreaOfDefection, Boundary };

inline const char* to_string(Region region) {
  switch (region) {
    case Region::AreaOfProtection: return "protect";
    case Region::AreaOfDefection: return "defect";
    case Region::Boundary: return "boundary";
  }
  return "unknown";
}

struct RegionPoint {
  int n_users = 0;
  double protection_cost = 0.0;
  Region region = Region::Boundary;
};

// Places (N, c) relative to the threshold curve for fixed (p, q).
inline RegionPoint classify_region(int n_users, double c, double p, double q,
                                   double scaler_mean = kAllOrNothingScalerMean) {
  detail::check_cost(c);
  const double threshold = threshold_cost(n_users, p, q, scaler_mean);
  Region region = Region::Boundary;
  if (c > threshold + kRegionBoundaryBand) {
    region = Region::AreaOfDefection;
  } else if (c < threshold - kRegionBoundaryBand) {
    region = Region::AreaOfProtection;
  }
  return {n_users, c, region};
}

// Lebesgue measure of c in [0,1] where defection dominates: 1 - c*(N).
inline double defection_fraction_at_n(int n_users, double p, double q,
                                      double scaler_mean = kAllOrNothingScalerMean) {
  const double fraction = 1.0 - threshold_cost(n_users, p, q, scaler_mean);
  return std::clamp(fraction, 0.0, 1.0);
}

// Uniform average of defection_fraction_at_n over n_values: the measure of
// the defection region of the (c, N) product space with c uniform on [0,1].
// The value is closed-form and deterministic; c_samples is the budget a
// sampling estimator would use and any midpoint estimator with at least
// that many samples must reproduce the returned value to within its grid
// resolution.
inline double overall_defection_fraction(double p, double q, const std::vector<int>& n_values,
                                         long long c_samples,
                                         double scaler_mean = kAllOrNothingScalerMean) {
  if (n_values.empty()) {
    throw std::domain_error("n_values must not be empty");
  }
  if (c_samples < 1000) {
    throw std::domain_error("c_samples must be >= 1000, got " + std::to_string(c_samples));
  }
  double total = 0.0;
  for (int n : n_values) {
    total += defection_fraction_at_n(n, p, q, scaler_mean);
  }
  return total / static_cast<double>(n_values.size());
}

}  // namespace netdecide
