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

#include "xcorr/serialization.h"

#include <sstream>

#include "json_codec.h"
#include "xcorr/errors.h"
#include "xcorr/rng.h"
#include "xcorr/scenario.h"
#include "xcorr/version.h"

namespace xcorr {
namespace codec {

json Parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

json ToJson(const Combination& c) { return json(c.inputs()); }

json ToJson(const Family& f) {
  json out = json::array();
  for (const auto& c : f) out.push_back(ToJson(c));
  return out;
}

json ToJson(const PlacementMatrix& p) {
  json rows = json::array();
  for (std::size_t j = 0; j < p.n_accounts(); ++j) {
    rows.push_back(p.account_bits(static_cast<AccountId>(j)).to_string());
  }
  return {{"m", p.n_accounts()},
          {"n", p.n_inputs()},
          {"alpha", p.alpha()},
          {"seed", p.seed()},
          {"rows", std::move(rows)}};
}

json ToJson(const Prediction& p) {
  return {{"output", p.output_id},
          {"verdict", ToString(p.verdict)},
          {"family", ToJson(p.family)},
          {"scores", p.scores}};
}

json ToJson(const ModelParams& p) {
  json j = {{"p_in", p.p_in}, {"p_out", p.p_out}, {"p_empty", p.p_empty}};
  if (!p.priors.empty()) j["priors"] = p.priors;
  return j;
}

Family FamilyFrom(const json& j) {
  if (!j.is_array()) throw ConfigError("family must be an array of arrays");
  Family f;
  for (const auto& c : j) {
    if (!c.is_array()) throw ConfigError("combination must be an array");
    std::vector<InputId> inputs;
    for (const auto& i : c) {
      if (!i.is_number_unsigned()) {
        throw ConfigError("input ids must be non-negative integers");
      }
      inputs.push_back(i.get<InputId>());
    }
    f.insert(Combination(std::move(inputs)));
  }
  return f;
}

PlacementMatrix PlacementFrom(const json& j) {
  try {
    PlacementConfig cfg;
    cfg.n_accounts = j.at("m").get<std::size_t>();
    cfg.n_inputs = j.at("n").get<std::size_t>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    BitMatrix rows(0, cfg.n_inputs);
    for (const auto& r : j.at("rows")) {
      const BitSet bits = BitSet::FromString(r.get<std::string>());
      if (bits.size() != cfg.n_inputs) throw ConfigError("row width mismatch");
      rows.push_row(bits);
    }
    if (rows.rows() != cfg.n_accounts) throw ConfigError("row count mismatch");
    return PlacementMatrix(cfg, std::move(rows));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad placement record: ") + e.what());
  }
}

Prediction PredictionFrom(const json& j) {
  try {
    Prediction p;
    p.output_id = j.at("output").get<OutputId>();
    p.verdict = VerdictFromString(j.at("verdict").get<std::string>());
    p.family = FamilyFrom(j.at("family"));
    p.scores = j.at("scores").get<std::map<std::string, double>>();
    if (p.targeted() == p.family.empty()) {
      throw ConfigError("targeted predictions need a family, others none");
    }
    return p;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad prediction record: ") + e.what());
  }
}

json GroupsJson(const std::vector<std::vector<InputId>>& groups) {
  return json(groups);
}

std::vector<std::vector<InputId>> GroupsFrom(const json& j) {
  try {
    return j.get<std::vector<std::vector<InputId>>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad groups: ") + e.what());
  }
}

}  // namespace codec

namespace {

using codec::json;

json IntervalJson(const Interval& i) { return json::array({i.lo, i.hi}); }

json ConfusionJson(const Confusion& c) {
  return {{"outputs", c.outputs},
          {"truly_targeted", c.truly_targeted},
          {"emitted", c.emitted},
          {"correct", c.correct},
          {"false_positive", c.false_positive},
          {"unknown", c.unknown}};
}

json LearnedJson(const std::vector<LearnedRecord>& records) {
  json out = json::array();
  for (const auto& r : records) {
    json j = codec::ToJson(r.params);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    out.push_back(std::move(j));
  }
  return out;
}

json SearchJson(const SearchStats& s) {
  return {{"searches", s.searches},
          {"tests_total", s.tests_total},
          {"tests_max", s.tests_max},
          {"unknowns", s.unknowns},
          {"budget_exceeded", s.budget_exceeded},
          {"bound_violations", s.bound_violations}};
}

json KneeJson(const KneeResult& k) {
  json curve = json::array();
  for (const auto& p : k.curve) {
    curve.push_back({{"accounts", p.accounts},
                     {"recall", p.metrics.recall},
                     {"precision", p.metrics.precision}});
  }
  return {{"knee", k.knee},
          {"plateau_recall", k.plateau_recall},
          {"plateau_found", k.plateau_found},
          {"curve", std::move(curve)}};
}

std::string Number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string FamilyToJson(const Family& family) {
  return codec::ToJson(family).dump();
}

Family FamilyFromJson(std::string_view text) {
  return codec::FamilyFrom(codec::Parse(text));
}

std::string PlacementToJson(const PlacementMatrix& placement) {
  return codec::ToJson(placement).dump();
}

PlacementMatrix PlacementFromJson(std::string_view text) {
  return codec::PlacementFrom(codec::Parse(text));
}

std::string PredictionToJson(const Prediction& prediction) {
  return codec::ToJson(prediction).dump();
}

Prediction PredictionFromJson(std::string_view text) {
  return codec::PredictionFrom(codec::Parse(text));
}

std::string GroupsToJson(const std::vector<std::vector<InputId>>& groups) {
  return codec::GroupsJson(groups).dump();
}

std::vector<std::vector<InputId>> GroupsFromJson(std::string_view text) {
  return codec::GroupsFrom(codec::Parse(text));
}

std::string ThresholdToJson(const ThresholdResult& r) {
  json j = {{"l", r.l},
            {"r", r.r},
            {"m_lr", r.m_lr},
            {"x_star", r.x_star},
            {"z_star", r.z_star},
            {"method", ToString(r.method)},
            {"limit", r.limit}};
  return j.dump(2);
}

std::string RecommendationToJson(const RecommendedConfig& rec) {
  json j = {{"admissible", rec.admissible}, {"m_lr", rec.m_lr}};
  if (rec.admissible) {
    j["x"] = rec.x;
    j["alpha"] = rec.alpha;
  }
  return j.dump(2);
}

std::string SearchTraceToJsonLines(const SearchResult& result,
                                   OutputId output_id) {
  std::string out;
  for (const auto& e : result.trace) {
    json j = {{"output", output_id},
              {"step", e.step},
              {"phase", e.phase},
              {"combination", codec::ToJson(e.combination)},
              {"outcome", ToString(e.outcome)}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string ReportToJson(const Report& report) {
  json j;
  j["config"] = json::parse(ScenarioToJson(report.config));
  j["accounts"] = report.accounts;
  j["alpha"] = report.alpha;
  j["detection_x"] =
      report.detection_x ? json(*report.detection_x) : json(nullptr);
  json algos = json::object();
  for (const auto& [name, ar] : report.algorithms) {
    const Metrics& m = ar.metrics;
    json per_trial = json::array();
    for (const auto& c : ar.per_trial) per_trial.push_back(ConfusionJson(c));
    algos[name] = {{"precision", m.precision},
                   {"recall", m.recall},
                   {"precision_ci", IntervalJson(m.precision_ci)},
                   {"recall_ci", IntervalJson(m.recall_ci)},
                   {"empty_emission", m.empty_emission},
                   {"counts", ConfusionJson(m.counts)},
                   {"per_trial", std::move(per_trial)}};
  }
  j["algorithms"] = std::move(algos);
  j["learned"] = {{"behavioral", LearnedJson(report.learned_behavioral)},
                  {"contextual", LearnedJson(report.learned_contextual)}};
  if (report.detection) {
    const DetectionStats& d = *report.detection;
    j["detection"] = {{"targeted", d.targeted},
                      {"targeted_detected", d.targeted_detected},
                      {"untargeted", d.untargeted},
                      {"untargeted_detected", d.untargeted_detected},
                      {"true_positive_rate", d.true_positive_rate()},
                      {"false_positive_rate", d.false_positive_rate()}};
  } else {
    j["detection"] = nullptr;
  }
  json search = json::object();
  for (const auto& [name, s] : report.search) search[name] = SearchJson(s);
  j["search"] = std::move(search);
  j["matching"] =
      report.mean_purity ? json{{"mean_purity", *report.mean_purity}}
                         : json(nullptr);
  j["metadata"] = {
      {"version", kVersion},
      {"rng", kRngName},
      {"bayes_estimators",
       "p_in = sum|A_i&A_k| / sum|A_i|, p_out = sum|A_k\\A_i| / "
       "sum(m-|A_i|) over targeted predictions; p_empty = sum|A_k| / "
       "(count*m) over untargeted predictions"},
      {"contextual_model", "display-location shares, p_empty = 1/N"},
      {"distance", report.config.placement.raw_distance
                       ? "euclidean on raw counts"
                       : "euclidean on l2-normalized counts"},
      {"precision_convention", "1.0 with empty_emission when nothing emitted"},
      {"knee_definition", "smallest m reaching 95% of recall at 4*m_max"}};
  return j.dump(2);
}

std::string ReportToCsv(const Report& report) {
  std::string out = "algo,n_inputs,accounts,metric,value\n";
  const std::string prefix_tail = "," +
                                  std::to_string(report.config.n_inputs) +
                                  "," + std::to_string(report.accounts) + ",";
  for (const auto& [name, ar] : report.algorithms) {
    const Metrics& m = ar.metrics;
    const std::string prefix = name + prefix_tail;
    out += prefix + "precision," + Number(m.precision) + "\n";
    out += prefix + "recall," + Number(m.recall) + "\n";
    out += prefix + "precision_lo," + Number(m.precision_ci.lo) + "\n";
    out += prefix + "precision_hi," + Number(m.precision_ci.hi) + "\n";
    out += prefix + "recall_lo," + Number(m.recall_ci.lo) + "\n";
    out += prefix + "recall_hi," + Number(m.recall_ci.hi) + "\n";
  }
  if (report.detection) {
    const std::string prefix = "detect" + prefix_tail;
    out += prefix + "true_positive_rate," +
           Number(report.detection->true_positive_rate()) + "\n";
    out += prefix + "false_positive_rate," +
           Number(report.detection->false_positive_rate()) + "\n";
  }
  return out;
}

std::string ScalingToJson(const ScalingResult& result,
                          const std::string& algorithm) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r = KneeJson(row.knee);
    r["n_inputs"] = row.n_inputs;
    rows.push_back(std::move(r));
  }
  json j = {{"algorithm", algorithm}, {"rows", std::move(rows)}};
  if (result.fit) {
    j["fit"] = {{"slope", result.fit->slope},
                {"intercept", result.fit->intercept},
                {"r2", result.fit->r2}};
  } else {
    j["fit"] = nullptr;
  }
  return j.dump(2);
}

std::string ScalingToCsv(const ScalingResult& result,
                         const std::string& algorithm) {
  std::string out = "algo,n_inputs,accounts,metric,value\n";
  for (const auto& row : result.rows) {
    for (const auto& p : row.knee.curve) {
      const std::string prefix = algorithm + "," +
                                 std::to_string(row.n_inputs) + "," +
                                 std::to_string(p.accounts) + ",";
      out += prefix + "recall," + Number(p.metrics.recall) + "\n";
      out += prefix + "precision," + Number(p.metrics.precision) + "\n";
    }
    out += algorithm + "," + std::to_string(row.n_inputs) + "," +
           std::to_string(row.knee.knee) + ",knee," +
           std::to_string(row.knee.knee) + "\n";
  }
  return out;
}

}  // namespace xcorr
