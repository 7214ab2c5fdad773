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

#include "xcorr/store.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "json_codec.h"
#include "xcorr/errors.h"

namespace xcorr {
namespace {

using codec::json;

void AppendLine(const std::filesystem::path& file, const json& record) {
  std::ofstream out(file, std::ios::app);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << record.dump() << '\n';
}

std::vector<json> ReadLines(const std::filesystem::path& file) {
  std::vector<json> out;
  std::ifstream in(file);
  if (!in) return out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ConfigError(file.string() + ":" + std::to_string(number) + ": " +
                        e.what());
    }
  }
  return out;
}

json TraceJson(const OutputTrace& t) {
  return {{"output", t.output_id},
          {"targeted", t.targeted},
          {"core", codec::ToJson(t.core)},
          {"in_target", t.in_target.to_string()},
          {"out_of_target", t.out_of_target.to_string()}};
}

OutputTrace TraceFrom(const json& j) {
  OutputTrace t;
  t.output_id = j.at("output").get<OutputId>();
  t.targeted = j.at("targeted").get<bool>();
  t.core = codec::FamilyFrom(j.at("core"));
  t.in_target = BitSet::FromString(j.at("in_target").get<std::string>());
  t.out_of_target =
      BitSet::FromString(j.at("out_of_target").get<std::string>());
  return t;
}

}  // namespace

CorrelationStore::CorrelationStore(std::filesystem::path root)
    : root_(std::move(root)) {}

std::filesystem::path CorrelationStore::ScenarioDir(
    const ScenarioConfig& cfg) const {
  return root_ / ScenarioHash(cfg);
}

void CorrelationStore::WriteConfig(const ScenarioConfig& cfg) const {
  const auto dir = ScenarioDir(cfg);
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "config.json");
  if (!out) throw ConfigError("cannot write " + (dir / "config.json").string());
  out << ScenarioToJson(cfg) << '\n';
}

void CorrelationStore::AppendTrial(
    const ScenarioConfig& cfg, const TrialData& data,
    const std::map<std::string, std::vector<Prediction>>& predictions) const {
  const auto dir = ScenarioDir(cfg);
  std::filesystem::create_directories(dir);

  json obs = {{"trial", data.trial},
              {"seed", data.seed},
              {"rounds", data.observations.rounds},
              {"placement", codec::ToJson(data.placement)},
              {"clusters", codec::GroupsJson(data.clusters)}};
  json outputs = json::array();
  for (std::size_t k = 0; k < data.observations.outputs.size(); ++k) {
    outputs.push_back({{"output", data.observations.outputs[k]},
                       {"active", data.observations.active[k].to_string()}});
  }
  obs["outputs"] = std::move(outputs);
  if (data.contextual) {
    obs["contextual"] = {{"n_inputs", data.contextual->n_inputs},
                         {"displays_per_input",
                          data.contextual->displays_per_input},
                         {"outputs", data.contextual->outputs},
                         {"counts", data.contextual->counts}};
  } else {
    obs["contextual"] = nullptr;
  }
  AppendLine(dir / "observations.jsonl", obs);

  json traces = json::array();
  for (const auto& t : data.trace.outputs) traces.push_back(TraceJson(t));
  AppendLine(dir / "traces.jsonl",
             {{"trial", data.trial}, {"outputs", std::move(traces)}});

  for (const auto& [algo, preds] : predictions) {
    json list = json::array();
    for (const auto& p : preds) list.push_back(codec::ToJson(p));
    AppendLine(dir / "predictions.jsonl", {{"trial", data.trial},
                                           {"algo", algo},
                                           {"predictions", std::move(list)}});
  }
}

std::vector<CorrelationStore::StoredTrial> CorrelationStore::Load(
    const std::filesystem::path& dir) {
  std::map<std::size_t, StoredTrial> trials;
  try {
    for (const auto& rec : ReadLines(dir / "observations.jsonl")) {
      StoredTrial& st = trials[rec.at("trial").get<std::size_t>()];
      TrialData& d = st.data;
      d.trial = rec.at("trial").get<std::size_t>();
      d.seed = rec.at("seed").get<std::uint64_t>();
      d.placement = codec::PlacementFrom(rec.at("placement"));
      d.clusters = codec::GroupsFrom(rec.at("clusters"));
      d.observations = ObservationSet{};
      d.observations.n_accounts = d.placement.n_accounts();
      d.observations.rounds = rec.at("rounds").get<int>();
      for (const auto& o : rec.at("outputs")) {
        d.observations.outputs.push_back(o.at("output").get<OutputId>());
        d.observations.active.push_back(
            BitSet::FromString(o.at("active").get<std::string>()));
      }
      d.contextual.reset();
      if (!rec.at("contextual").is_null()) {
        const json& c = rec.at("contextual");
        ContextualCounts cc;
        cc.n_inputs = c.at("n_inputs").get<std::size_t>();
        cc.displays_per_input = c.at("displays_per_input").get<int>();
        cc.outputs = c.at("outputs").get<std::vector<OutputId>>();
        cc.counts =
            c.at("counts").get<std::vector<std::vector<std::uint32_t>>>();
        d.contextual = std::move(cc);
      }
    }
    for (const auto& rec : ReadLines(dir / "traces.jsonl")) {
      StoredTrial& st = trials[rec.at("trial").get<std::size_t>()];
      st.data.trace.outputs.clear();
      for (const auto& t : rec.at("outputs")) {
        st.data.trace.outputs.push_back(TraceFrom(t));
      }
    }
    for (const auto& rec : ReadLines(dir / "predictions.jsonl")) {
      StoredTrial& st = trials[rec.at("trial").get<std::size_t>()];
      auto& list = st.predictions[rec.at("algo").get<std::string>()];
      list.clear();
      for (const auto& p : rec.at("predictions")) {
        list.push_back(codec::PredictionFrom(p));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError("bad store record in " + dir.string() + ": " +
                      e.what());
  }
  std::vector<StoredTrial> out;
  for (auto& [_, st] : trials) out.push_back(std::move(st));
  return out;
}

ScenarioConfig CorrelationStore::LoadConfig(const std::filesystem::path& dir) {
  return LoadScenario(dir / "config.json");
}

}  // namespace xcorr
