// Copyright 2026 The xcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xcorr/errors.h"
#include "xcorr/experiment.h"
#include "xcorr/input_matching.h"
#include "xcorr/scenario.h"
#include "xcorr/serialization.h"
#include "xcorr/store.h"
#include "xcorr/threshold_analysis.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string csv;
};

void AddCommon(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Scenario JSON file")->required();
  cmd->add_option("--seed", opts.seed,
                  "Seed override (falls back to XCORR_SEED, then the config)");
  cmd->add_option("--out", opts.out, "Write the JSON report here");
  cmd->add_option("--csv", opts.csv, "Write the flat CSV table here");
}

xcorr::ScenarioConfig LoadWithSeed(const CommonOptions& opts) {
  xcorr::ScenarioConfig cfg = xcorr::LoadScenario(opts.config);
  if (opts.seed) {
    cfg.seed = *opts.seed;
  } else if (const char* env = std::getenv("XCORR_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw xcorr::ConfigError("XCORR_SEED is not an unsigned integer");
    }
  }
  return cfg;
}

void Emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw xcorr::ConfigError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<std::size_t> ParseList(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw xcorr::ConfigError("bad list entry '" + item + "'");
    }
  }
  return out;
}

int CheckMinimums(const xcorr::Report& report, std::optional<double> min_recall,
                  std::optional<double> min_precision) {
  int code = kExitOk;
  for (const auto& [name, ar] : report.algorithms) {
    if (min_recall && ar.metrics.recall < *min_recall) {
      std::cerr << name << ": recall " << ar.metrics.recall << " < "
                << *min_recall << "\n";
      code = kExitCheckFailed;
    }
    if (min_precision && ar.metrics.precision < *min_precision) {
      std::cerr << name << ": precision " << ar.metrics.precision << " < "
                << *min_precision << "\n";
      code = kExitCheckFailed;
    }
  }
  return code;
}

std::vector<std::string> AlgorithmsFor(const std::string& algo,
                                       const xcorr::ScenarioConfig& cfg) {
  if (algo == "corefamily") {
    std::vector<std::string> out{"detect", "removal"};
    if (cfg.corefamily.r_max) out.push_back("agglomerative");
    return out;
  }
  return {algo};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential-correlation targeting audit toolkit"};
  app.require_subcommand(1);

  CommonOptions sim_opts;
  std::string store_dir;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario");
  AddCommon(simulate, sim_opts);
  simulate->add_option("--store", store_dir, "Correlation store root");

  CommonOptions det_opts;
  std::string algo;
  std::optional<double> min_recall;
  std::optional<double> min_precision;
  auto* detect =
      app.add_subcommand("detect", "Run one detection algorithm on a scenario");
  AddCommon(detect, det_opts);
  detect->add_option("--algo", algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"setint", "bayes", "composite", "corefamily"}));
  detect->add_option("--store", store_dir, "Correlation store root");
  detect->add_option("--min-recall", min_recall,
                     "Exit with code 3 if recall falls below this");
  detect->add_option("--min-precision", min_precision,
                     "Exit with code 3 if precision falls below this");

  CommonOptions sweep_opts;
  std::string sweep_algo = "bayes";
  std::string n_list;
  std::size_t m_max = 16;
  auto* sweep = app.add_subcommand(
      "sweep", "Find the recall knee for each input count");
  AddCommon(sweep, sweep_opts);
  sweep->add_option("--algo", sweep_algo, "Algorithm whose recall is swept");
  sweep->add_option("--n", n_list,
                    "Comma-separated input counts (default: the config's)");
  sweep->add_option("--m-max", m_max, "Largest account count of interest");

  int l = 1;
  int r = 1;
  std::optional<double> ratio;
  bool curve = false;
  int points = 99;
  auto* threshold = app.add_subcommand(
      "threshold", "Admissible noise ratio for l combinations of order r");
  threshold->add_option("--l", l, "Core family size")->required();
  threshold->add_option("--r", r, "Core family order")->required();
  threshold->add_option("--ratio", ratio,
                        "p_out/p_in; prints the recommended x and alpha");
  threshold->add_flag("--curve", curve, "Emit (z, phi) samples as CSV");
  threshold->add_option("--points", points, "Samples for --curve");

  CommonOptions match_opts;
  std::size_t match_trial = 0;
  auto* match = app.add_subcommand(
      "match", "Cluster inputs by contextual signature for one trial");
  AddCommon(match, match_opts);
  match->add_option("--trial", match_trial, "Trial index");

  std::string report_dir;
  std::string report_out;
  std::string report_csv;
  auto* report = app.add_subcommand(
      "report", "Score the predictions kept in a correlation store");
  report->add_option("--store", report_dir, "Scenario directory in the store")
      ->required();
  report->add_option("--out", report_out, "Write the JSON report here");
  report->add_option("--csv", report_csv, "Write the flat CSV table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate || *detect) {
      const CommonOptions& opts = *simulate ? sim_opts : det_opts;
      xcorr::ScenarioConfig cfg = LoadWithSeed(opts);
      if (*detect) cfg.algorithms = AlgorithmsFor(algo, cfg);
      xcorr::RunOptions run;
      if (!store_dir.empty()) run.store_root = store_dir;
      const xcorr::Report rep = xcorr::RunScenario(cfg, run);
      Emit(xcorr::ReportToJson(rep), opts.out);
      if (!opts.csv.empty()) Emit(xcorr::ReportToCsv(rep), opts.csv);
      std::cerr << "runtime_seconds " << rep.runtime_seconds << "\n";
      if (!store_dir.empty()) {
        std::cerr << "stored under "
                  << xcorr::CorrelationStore(store_dir).ScenarioDir(cfg)
                         .string()
                  << "\n";
      }
      return *detect ? CheckMinimums(rep, min_recall, min_precision) : kExitOk;
    }
    if (*sweep) {
      xcorr::ScenarioConfig cfg = LoadWithSeed(sweep_opts);
      std::vector<std::size_t> ns =
          n_list.empty() ? std::vector<std::size_t>{cfg.n_inputs}
                         : ParseList(n_list);
      const xcorr::ScalingResult res =
          xcorr::ScalingSweep(cfg, ns, sweep_algo, m_max);
      Emit(xcorr::ScalingToJson(res, sweep_algo), sweep_opts.out);
      if (!sweep_opts.csv.empty()) {
        Emit(xcorr::ScalingToCsv(res, sweep_algo), sweep_opts.csv);
      }
      return kExitOk;
    }
    if (*threshold) {
      if (curve) {
        std::string csv = "z,phi\n";
        for (const auto& [z, phi] : xcorr::PhiCurve(l, r, points)) {
          std::ostringstream row;
          row.precision(17);
          row << z << "," << phi << "\n";
          csv += row.str();
        }
        Emit(csv, "");
        return kExitOk;
      }
      Emit(xcorr::ThresholdToJson(xcorr::MaxRatio(l, r)), "");
      if (ratio) {
        Emit(xcorr::RecommendationToJson(xcorr::RecommendConfig(l, r, *ratio)),
             "");
      }
      return kExitOk;
    }
    if (*match) {
      xcorr::ScenarioConfig cfg = LoadWithSeed(match_opts);
      cfg.placement.matching = true;
      cfg.Validate();
      const xcorr::TrialData data = xcorr::GenerateTrial(cfg, match_trial);
      const double purity = xcorr::GroupingPurity(
          data.clusters, xcorr::TrueGroups(cfg), cfg.n_inputs);
      std::ostringstream os;
      os.precision(17);
      os << "{\n  \"groups\": " << xcorr::GroupsToJson(data.clusters)
         << ",\n  \"purity\": " << purity << "\n}\n";
      Emit(os.str(), match_opts.out);
      return kExitOk;
    }
    if (*report) {
      const xcorr::ScenarioConfig cfg =
          xcorr::CorrelationStore::LoadConfig(report_dir);
      xcorr::Report rep;
      rep.config = cfg;
      rep.accounts = cfg.accounts();
      rep.alpha = cfg.alpha();
      std::map<std::string, xcorr::Confusion> totals;
      for (const auto& st : xcorr::CorrelationStore::Load(report_dir)) {
        for (const auto& [name, c] : xcorr::ScorePredictions(
                 cfg, st.predictions, st.data.trace)) {
          rep.algorithms[name].per_trial.push_back(c);
          totals[name] += c;
        }
      }
      for (const auto& [name, c] : totals) {
        rep.algorithms[name].metrics = xcorr::Summarize(c);
      }
      Emit(xcorr::ReportToJson(rep), report_out);
      if (!report_csv.empty()) Emit(xcorr::ReportToCsv(rep), report_csv);
      return kExitOk;
    }
  } catch (const xcorr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const xcorr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
