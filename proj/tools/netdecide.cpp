// netdecide CLI: expected-utility analysis of protect-vs-defect decisions
// for a homogeneous network, with CSV/JSON dataset emission.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netdecide/loss_profile.hpp"
#include "netdecide/model.hpp"
#include "netdecide/optimizer.hpp"
#include "netdecide/simulate.hpp"
#include "netdecide/tipping.hpp"

namespace {

using nlohmann::json;
using namespace netdecide;

// All reals are printed with 9 significant digits; deterministic formatting
// wins over minimality.
std::string fmt9(double value) {
  if (value == 0.0) value = 0.0;  // normalize -0
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

// The value the 9-digit rendering denotes. JSON carries these so that CSV
// and JSON encode identical values.
double rounded9(double value) { return std::strtod(fmt9(value).c_str(), nullptr); }

struct IntRange {
  int start = 1;
  int stop = 30;
  int step = 1;

  std::vector<int> values() const {
    std::vector<int> out;
    for (int v = start; v <= stop; v += step) out.push_back(v);
    return out;
  }
};

struct RealRange {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.05;

  std::vector<double> values() const {
    std::vector<double> out;
    const auto count = static_cast<long long>((stop - start) / step + 1e-9) + 1;
    for (long long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

std::vector<std::string> split(const std::string& text, char separator) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, separator)) parts.push_back(part);
  return parts;
}

IntRange parse_int_range(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 2 && parts.size() != 3) {
    throw std::domain_error(flag + " must be start:stop[:step], got '" + text + "'");
  }
  IntRange range;
  try {
    range.start = std::stoi(parts[0]);
    range.stop = std::stoi(parts[1]);
    range.step = parts.size() == 3 ? std::stoi(parts[2]) : 1;
  } catch (const std::exception&) {
    throw std::domain_error(flag + " has a non-integer part in '" + text + "'");
  }
  if (range.step <= 0) throw std::domain_error(flag + " step must be > 0");
  if (range.stop < range.start) throw std::domain_error(flag + " is empty: stop < start");
  return range;
}

RealRange parse_real_range(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 2 && parts.size() != 3) {
    throw std::domain_error(flag + " must be start:stop[:step], got '" + text + "'");
  }
  RealRange range;
  try {
    range.start = std::stod(parts[0]);
    range.stop = std::stod(parts[1]);
    range.step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
  } catch (const std::exception&) {
    throw std::domain_error(flag + " has a non-numeric part in '" + text + "'");
  }
  if (!(range.step > 0.0)) throw std::domain_error(flag + " step must be > 0");
  if (range.stop < range.start) throw std::domain_error(flag + " is empty: stop < start");
  return range;
}

// "loss:prob,loss:prob,..." -> LossProfile (validated on construction).
LossProfile parse_profile(const std::string& text) {
  std::vector<LossOutcome> outcomes;
  for (const std::string& pair : split(text, ',')) {
    const auto parts = split(pair, ':');
    if (parts.size() != 2) {
      throw std::domain_error("--profile entries must be loss:prob, got '" + pair + "'");
    }
    try {
      outcomes.push_back({std::stod(parts[0]), std::stod(parts[1])});
    } catch (const std::exception&) {
      throw std::domain_error("--profile has a non-numeric part in '" + pair + "'");
    }
  }
  return LossProfile(outcomes);
}

json profile_json(const LossProfile& profile) {
  json out = json::array();
  for (const LossOutcome& outcome : profile.outcomes()) {
    out.push_back({rounded9(outcome.loss), rounded9(outcome.probability)});
  }
  return out;
}

// One emitted report: a column-oriented dataset plus scalar summary, encoded
// as CSV (header, rows, '#'-prefixed summary lines) or as a single JSON
// object {params, rows, summary}.
struct Dataset {
  json params = json::object();
  std::vector<std::string> columns;
  std::vector<json> rows;  // objects keyed by column name
  std::vector<std::string> csv_comments;
  json summary = json::object();

  static std::string cell(const json& value) {
    if (value.is_null()) return "";
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
    return fmt9(value.get<double>());
  }

  std::string to_csv() const {
    std::ostringstream out;
    for (size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const json& row : rows) {
      for (size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << cell(row.at(columns[i]));
      }
      out << '\n';
    }
    for (const std::string& comment : csv_comments) {
      out << "# " << comment << '\n';
    }
    return out.str();
  }

  std::string to_json_text() const {
    json doc;
    doc["params"] = params;
    doc["rows"] = rows;
    doc["summary"] = summary;
    return doc.dump(2) + "\n";
  }
};

void emit(const Dataset& dataset, const std::string& format, const std::string& out_path) {
  const std::string text = format == "json" ? dataset.to_json_text() : dataset.to_csv();
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
  file << text;
}

json base_params(int n, double c, double p, double q, const LossProfile& profile) {
  json out;
  out["n"] = n;
  out["c"] = rounded9(c);
  out["p"] = rounded9(p);
  out["q"] = rounded9(q);
  out["profile"] = profile_json(profile);
  return out;
}

Dataset utility_dataset(const ModelParams& params, int k) {
  const StrategyOutcome outcome = system_utility(params, k);
  Dataset data;
  data.params = base_params(params.n_users, params.protection_cost,
                            params.external_infection_prob, params.internal_infection_prob,
                            params.loss_profile);
  data.params["k"] = k;
  data.columns = {"k", "system_utility", "protect_group_utility", "defect_group_utility"};
  data.rows.push_back({{"k", outcome.defector_count},
                       {"system_utility", rounded9(outcome.system_utility)},
                       {"protect_group_utility", rounded9(outcome.protect_group_utility)},
                       {"defect_group_utility", rounded9(outcome.defect_group_utility)}});
  data.summary = data.rows.front();
  return data;
}

Dataset optimal_k_dataset(const ModelParams& params) {
  const OptimizationResult result = optimal_k(params);
  Dataset data;
  data.params = base_params(params.n_users, params.protection_cost,
                            params.external_infection_prob, params.internal_infection_prob,
                            params.loss_profile);
  data.columns = {"k", "utility"};
  for (const auto& [k, utility] : result.full_curve) {
    data.rows.push_back({{"k", k}, {"utility", rounded9(utility)}});
  }
  data.summary["best_k"] = result.best_k;
  data.summary["best_utility"] = rounded9(result.best_utility);
  data.summary["boundary_optimal"] = result.boundary_optimal;
  data.csv_comments.push_back("best_k," + std::to_string(result.best_k));
  data.csv_comments.push_back("best_utility," + fmt9(result.best_utility));
  data.csv_comments.push_back(std::string("boundary_optimal,") +
                              (result.boundary_optimal ? "true" : "false"));
  return data;
}

Dataset tipping_dataset(double c, double p, double q, const LossProfile& profile) {
  const TippingPointResult result = tipping_point_n(c, p, q, profile.retained_mean());
  Dataset data;
  data.params = base_params(0, c, p, q, profile);
  data.params.erase("n");
  data.columns = {"exists", "crossing_n", "reason"};
  json row;
  row["exists"] = result.exists;
  row["crossing_n"] = result.exists ? json(rounded9(result.crossing_n)) : json(nullptr);
  row["reason"] = result.exists ? json(nullptr) : json(to_string(result.reason_absent));
  data.rows.push_back(row);
  data.summary = row;
  if (!result.exists) {
    data.csv_comments.push_back(std::string("none: ") + to_string(result.reason_absent));
  }
  return data;
}

Dataset threshold_curve_dataset(const IntRange& n_range, double p, double q,
                                const LossProfile& profile) {
  Dataset data;
  data.params = base_params(0, 0.0, p, q, profile);
  data.params.erase("n");
  data.params.erase("c");
  data.params["n_range"] = std::to_string(n_range.start) + ":" + std::to_string(n_range.stop) +
                           ":" + std::to_string(n_range.step);
  data.columns = {"n", "threshold_cost"};
  for (int n : n_range.values()) {
    data.rows.push_back(
        {{"n", n}, {"threshold_cost", rounded9(threshold_cost(n, p, q, profile.retained_mean()))}});
  }
  return data;
}

Dataset region_dataset(const IntRange& n_range, const RealRange& c_range, double p, double q,
                       const LossProfile& profile) {
  const double scaler_mean = profile.retained_mean();
  Dataset data;
  data.params = base_params(0, 0.0, p, q, profile);
  data.params.erase("n");
  data.params.erase("c");
  data.columns = {"n", "c", "region"};
  const auto n_values = n_range.values();
  const auto c_values = c_range.values();
  for (int n : n_values) {
    for (double c : c_values) {
      const RegionPoint point = classify_region(n, c, p, q, scaler_mean);
      data.rows.push_back(
          {{"n", n}, {"c", rounded9(c)}, {"region", to_string(point.region)}});
    }
  }
  json fractions = json::array();
  for (int n : n_values) {
    const double fraction = defection_fraction_at_n(n, p, q, scaler_mean);
    fractions.push_back({{"n", n}, {"fraction", rounded9(fraction)}});
    data.csv_comments.push_back("defection_fraction_at_n," + std::to_string(n) + "," +
                                fmt9(fraction));
  }
  const double overall = overall_defection_fraction(p, q, n_values, 100000, scaler_mean);
  data.summary["defection_fraction_at_n"] = fractions;
  data.summary["overall_defection_fraction"] = rounded9(overall);
  data.csv_comments.push_back("overall_defection_fraction," + fmt9(overall));
  return data;
}

Dataset simulate_dataset(const SimulationConfig& config, unsigned threads) {
  const SimulationReport report = run_simulation(config, threads);
  Dataset data;
  data.params = base_params(config.params.n_users, config.params.protection_cost,
                            config.params.external_infection_prob,
                            config.params.internal_infection_prob, config.params.loss_profile);
  data.params["k"] = config.defector_count;
  data.params["trials"] = config.trials;
  data.params["seed"] = config.seed;
  data.columns = {"trials", "seed", "empirical_mean", "analytic_expectation", "std_error"};
  data.rows.push_back({{"trials", report.trials},
                       {"seed", report.seed},
                       {"empirical_mean", rounded9(report.empirical_mean_system_utility)},
                       {"analytic_expectation", rounded9(report.analytic_expectation)},
                       {"std_error", rounded9(report.std_error)}});
  data.summary = data.rows.front();
  return data;
}

Dataset figures_dataset(int which, const IntRange& n_range, const RealRange& c_range, double c,
                        double p, double q, const LossProfile& profile) {
  const double scaler_mean = profile.retained_mean();
  Dataset data;
  data.params = base_params(0, c, p, q, profile);
  data.params.erase("n");
  data.params["figure"] = which;

  switch (which) {
    case 1: {  // all-defect utility vs N
      data.params.erase("c");
      data.columns = {"n", "utility"};
      for (int n : n_range.values()) {
        const ModelParams params(n, 0.0, p, q, profile);
        data.rows.push_back({{"n", n}, {"utility", rounded9(all_defect_utility(params))}});
      }
      break;
    }
    case 2: {  // all-protect utility vs N, one series per c
      data.params.erase("c");
      data.columns = {"n", "utility", "c"};
      for (int n : n_range.values()) {
        for (double c_value : c_range.values()) {
          const ModelParams params(n, c_value, p, q, profile);
          data.rows.push_back({{"n", n},
                               {"utility", rounded9(all_protect_utility(params))},
                               {"c", rounded9(c_value)}});
        }
      }
      break;
    }
    case 3: {  // both boundary strategies at fixed c, crossing annotated
      data.columns = {"n", "utility", "strategy"};
      for (int n : n_range.values()) {
        const ModelParams params(n, c, p, q, profile);
        data.rows.push_back(
            {{"n", n}, {"utility", rounded9(all_defect_utility(params))}, {"strategy", "defect"}});
        data.rows.push_back(
            {{"n", n}, {"utility", rounded9(all_protect_utility(params))}, {"strategy", "protect"}});
      }
      const TippingPointResult crossing = tipping_point_n(c, p, q, scaler_mean);
      if (crossing.exists) {
        const double crossing_utility = crossing.crossing_n * (scaler_mean - c);
        data.summary["crossing_n"] = rounded9(crossing.crossing_n);
        data.summary["crossing_utility"] = rounded9(crossing_utility);
        data.csv_comments.push_back("crossing_n," + fmt9(crossing.crossing_n));
        data.csv_comments.push_back("crossing_utility," + fmt9(crossing_utility));
      } else {
        data.summary["crossing_reason"] = to_string(crossing.reason_absent);
        data.csv_comments.push_back(std::string("crossing,none: ") +
                                    to_string(crossing.reason_absent));
      }
      break;
    }
    case 4: {  // threshold-cost curve
      Dataset curve = threshold_curve_dataset(n_range, p, q, profile);
      curve.params["figure"] = which;
      return curve;
    }
    default:
      throw std::domain_error("figure id must be 1, 2, 3 or 4, got " + std::to_string(which));
  }
  return data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected-utility analysis of protect-vs-defect decisions for a "
               "homogeneous network"};
  app.require_subcommand(1);

  // Shared option storage; each subcommand registers the flags it uses.
  int n = 0;
  double c = 0.0;
  double p = 0.5;
  double q = 0.1;
  int k = 0;
  std::string profile_text = "0:0.5,1:0.5";
  long long trials = 100000;
  uint64_t seed = 42;
  unsigned threads = 1;
  int figure = 0;
  std::string n_range_text = "1:30:1";
  std::string c_range_text;
  std::string format = "csv";
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool with_profile = true) {
    sub->add_option("--p", p, "external infection probability (default 0.5)");
    sub->add_option("--q", q, "internal infection probability (default 0.1)");
    if (with_profile) {
      sub->add_option("--profile", profile_text,
                      "loss profile as loss:prob[,loss:prob...] (default all-or-nothing)");
    }
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path, "write output to PATH instead of stdout");
  };

  CLI::App* cmd_utility = app.add_subcommand("utility", "system utility for a given defector count");
  cmd_utility->add_option("--n", n, "network size")->required();
  cmd_utility->add_option("--c", c, "protection cost");
  cmd_utility->add_option("--k", k, "defector count");
  add_common(cmd_utility);

  CLI::App* cmd_optimal = app.add_subcommand("optimal-k", "utility-maximizing defector count");
  cmd_optimal->add_option("--n", n, "network size")->required();
  cmd_optimal->add_option("--c", c, "protection cost");
  add_common(cmd_optimal);

  CLI::App* cmd_tipping = app.add_subcommand("tipping", "network size where the strategies tie");
  cmd_tipping->add_option("--c", c, "protection cost")->required();
  add_common(cmd_tipping);

  CLI::App* cmd_threshold =
      app.add_subcommand("threshold-curve", "tie-cost c*(N) over a range of network sizes");
  cmd_threshold->add_option("--n-range", n_range_text, "start:stop[:step] (default 1:30:1)");
  add_common(cmd_threshold);

  CLI::App* cmd_region =
      app.add_subcommand("region", "dominant-strategy map over an (N, c) grid");
  cmd_region->add_option("--n-range", n_range_text, "start:stop[:step] (default 1:30:1)");
  cmd_region->add_option("--c-range", c_range_text, "start:stop[:step] (default 0:1:0.05)");
  add_common(cmd_region);

  CLI::App* cmd_simulate =
      app.add_subcommand("simulate", "Monte Carlo check of the analytic expectation");
  cmd_simulate->add_option("--n", n, "network size")->required();
  cmd_simulate->add_option("--c", c, "protection cost");
  cmd_simulate->add_option("--k", k, "defector count");
  cmd_simulate->add_option("--trials", trials, "number of rounds (default 100000)");
  cmd_simulate->add_option("--seed", seed, "PRNG seed (default 42)");
  cmd_simulate->add_option("--threads", threads, "worker threads; does not change results");
  add_common(cmd_simulate);

  CLI::App* cmd_figures = app.add_subcommand("figures", "figure datasets 1-4");
  cmd_figures->add_option("which", figure, "figure id: 1, 2, 3 or 4")->required();
  CLI::Option* fig_c = cmd_figures->add_option("--c", c, "protection cost (figure 3 default 0.4)");
  cmd_figures->add_option("--n-range", n_range_text, "start:stop[:step] (default 1:30:1)");
  cmd_figures->add_option("--c-range", c_range_text,
                          "figure 2 cost series (default 0.1:0.9:0.2)");
  CLI::Option* fig_q = nullptr;
  {
    cmd_figures->add_option("--p", p, "external infection probability (default 0.5)");
    fig_q = cmd_figures->add_option("--q", q,
                                    "internal infection probability (default 0.1; figure 3 "
                                    "defaults to 0.2)");
    cmd_figures->add_option("--profile", profile_text,
                            "loss profile as loss:prob[,loss:prob...] (default all-or-nothing)");
    cmd_figures->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_figures->add_option("--out", out_path, "write output to PATH instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const LossProfile profile = parse_profile(profile_text);

    if (app.got_subcommand(cmd_utility)) {
      emit(utility_dataset(ModelParams(n, c, p, q, profile), k), format, out_path);
    } else if (app.got_subcommand(cmd_optimal)) {
      emit(optimal_k_dataset(ModelParams(n, c, p, q, profile)), format, out_path);
    } else if (app.got_subcommand(cmd_tipping)) {
      emit(tipping_dataset(c, p, q, profile), format, out_path);
    } else if (app.got_subcommand(cmd_threshold)) {
      emit(threshold_curve_dataset(parse_int_range(n_range_text, "--n-range"), p, q, profile),
           format, out_path);
    } else if (app.got_subcommand(cmd_region)) {
      if (c_range_text.empty()) c_range_text = "0:1:0.05";
      emit(region_dataset(parse_int_range(n_range_text, "--n-range"),
                          parse_real_range(c_range_text, "--c-range"), p, q, profile),
           format, out_path);
    } else if (app.got_subcommand(cmd_simulate)) {
      emit(simulate_dataset(SimulationConfig(ModelParams(n, c, p, q, profile), k, trials, seed),
                            threads),
           format, out_path);
    } else if (app.got_subcommand(cmd_figures)) {
      if (figure == 3) {
        if (fig_c->count() == 0) c = 0.4;
        if (fig_q->count() == 0) q = 0.2;
      }
      if (c_range_text.empty()) c_range_text = "0.1:0.9:0.2";
      emit(figures_dataset(figure, parse_int_range(n_range_text, "--n-range"),
                           parse_real_range(c_range_text, "--c-range"), c, p, q, profile),
           format, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
