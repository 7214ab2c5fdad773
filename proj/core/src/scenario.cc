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

#include "xcorr/scenario.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "xcorr/errors.h"
#include "xcorr/placement.h"
#include "xcorr/threshold_analysis.h"

namespace xcorr {
namespace {

using nlohmann::json;

std::size_t LineAt(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + byte, '\n'));
}

// Line of the first `"key":` in the source, 0 when absent.
std::size_t LineOfKey(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = text.find(quoted);
  while (pos != std::string_view::npos) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() &&
           (text[after] == ' ' || text[after] == '\t' ||
            text[after] == '\n' || text[after] == '\r')) {
      ++after;
    }
    if (after < text.size() && text[after] == ':') return LineAt(text, pos);
    pos = text.find(quoted, pos + 1);
  }
  return 0;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void Fail(const std::string& key,
                         const std::string& message) const {
    const std::size_t line = LineOfKey(text_, key);
    std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    throw ConfigError(where + "'" + key + "': " + message);
  }

  void CheckKeys(const json& obj, std::initializer_list<const char*> allowed,
                 const std::string& context) const {
    if (!obj.is_object()) Fail(context, "expected an object");
    for (const auto& [key, _] : obj.items()) {
      const bool known =
          std::any_of(allowed.begin(), allowed.end(),
                      [&](const char* k) { return key == k; });
      if (!known) Fail(key, "unknown key in " + context);
    }
  }

  void Get(const json& obj, const char* key, std::size_t& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      Fail(key, "expected a non-negative integer");
    }
    out = v.get<std::size_t>();
  }
  void Get(const json& obj, const char* key, int& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) Fail(key, "expected an integer");
    out = v.get<int>();
  }
  void Get(const json& obj, const char* key, double& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) Fail(key, "expected a number");
    out = v.get<double>();
  }
  void Get(const json& obj, const char* key, bool& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_boolean()) Fail(key, "expected true or false");
    out = v.get<bool>();
  }
  void Get(const json& obj, const char* key, std::string& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) Fail(key, "expected a string");
    out = v.get<std::string>();
  }
  // A number, or "auto"/null for nullopt.
  void GetAuto(const json& obj, const char* key,
               std::optional<double>& out) const {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      Fail(key, "expected a number or \"auto\"");
    }
  }
  template <typename T>
  void GetOptional(const json& obj, const char* key,
                   std::optional<T>& out) const {
    if (!obj.contains(key)) return;
    if (obj.at(key).is_null()) {
      out.reset();
      return;
    }
    T value{};
    Get(obj, key, value);
    out = value;
  }

 private:
  std::string_view text_;
};

json OptionalJson(const auto& v) {
  if (!v) return nullptr;
  return json(*v);
}

std::string_view ToString(WorkloadKind kind) {
  return kind == WorkloadKind::kNonOverlapping ? "non_overlapping"
                                               : "overlapping";
}

json ParamsJson(const ModelParams& p) {
  json j = {{"p_in", p.p_in}, {"p_out", p.p_out}, {"p_empty", p.p_empty}};
  if (!p.priors.empty()) j["priors"] = p.priors;
  return j;
}

}  // namespace

const std::vector<std::string>& AlgorithmNames() {
  static const std::vector<std::string> names{
      "setint", "bayes",         "contextual", "composite",
      "detect", "agglomerative", "removal"};
  return names;
}

void ScenarioConfig::Validate() const {
  if (n_inputs < 1) throw ConfigError("n_inputs must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
  if (algorithms.empty()) throw ConfigError("no algorithm selected");
  for (const auto& a : algorithms) {
    const auto& names = AlgorithmNames();
    if (std::find(names.begin(), names.end(), a) == names.end()) {
      throw ConfigError("unknown algorithm '" + a + "'");
    }
  }
  const auto& w = workload;
  if (w.kind == WorkloadKind::kOverlapping) {
    if (w.groups < 1 || w.group_size < 1) {
      throw ConfigError("overlapping workload needs groups and group_size");
    }
    if (w.groups * w.group_size > n_inputs) {
      throw ConfigError("groups do not fit in n_inputs");
    }
  } else {
    if (w.core_l < 1 || w.core_r < 1) {
      throw ConfigError("core l and r must be >= 1");
    }
    if (w.core_r > n_inputs) throw ConfigError("core r exceeds n_inputs");
    if (targeted_ads() > 0 && w.core_l > 1) {
      // l distinct r-subsets must exist.
      double subsets = 1.0;
      for (std::size_t k = 0; k < w.core_r; ++k) {
        subsets = subsets * static_cast<double>(n_inputs - k) /
                  static_cast<double>(k + 1);
      }
      if (subsets < static_cast<double>(w.core_l)) {
        throw ConfigError("not enough inputs for the requested core size");
      }
    }
  }
  if (targeted_ads() + untargeted_ads() == 0) {
    throw ConfigError("workload has no ads");
  }
  const auto& s = service;
  if (targeted_ads() > 0 && !(s.p_out >= 0.0 && s.p_out < s.p_in &&
                              s.p_in <= 1.0)) {
    throw ConfigError("service needs 0 <= p_out < p_in <= 1");
  }
  if (untargeted_ads() > 0 && !(s.p_empty > 0.0 && s.p_empty <= 1.0)) {
    throw ConfigError("service needs 0 < p_empty <= 1");
  }
  if (s.contextual || placement.matching) {
    if (!(s.ctx_p_out >= 0.0 && s.ctx_p_out < s.ctx_p_in &&
          s.ctx_p_in <= 1.0)) {
      throw ConfigError("contextual service needs 0 <= p_out < p_in <= 1");
    }
    if (!(s.ctx_p_empty > 0.0 && s.ctx_p_empty <= 1.0)) {
      throw ConfigError("contextual service needs 0 < p_empty <= 1");
    }
    if (s.displays_per_input < 1) {
      throw ConfigError("displays_per_input must be >= 1");
    }
    if (w.kind == WorkloadKind::kNonOverlapping && w.core_r != 1 &&
        targeted_ads() > 0) {
      throw ConfigError("contextual targeting needs single-input cores");
    }
  }
  if ((uses("contextual") || uses("composite")) && !s.contextual) {
    throw ConfigError("contextual algorithms need service.contextual");
  }
  if (placement.alpha && !(*placement.alpha > 0.0 && *placement.alpha < 1.0)) {
    throw ConfigError("alpha must be in (0, 1)");
  }
  if (!placement.accounts && !(placement.c > 0.0)) {
    throw ConfigError("placement needs accounts or c > 0");
  }
  if (placement.accounts && *placement.accounts < 1) {
    throw ConfigError("accounts must be >= 1");
  }
  if (!(placement.match_threshold >= 0.0)) {
    throw ConfigError("match_threshold must be >= 0");
  }
  setint.Validate();
  bayes.init.Validate(bayes.init.priors.empty() ? 0 : n_inputs);
  if (bayes.options.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (corefamily.x && !(*corefamily.x > 0.0 && *corefamily.x <= 1.0)) {
    throw ConfigError("corefamily x must be in (0, 1]");
  }
  if (corefamily.l_max < 1) throw ConfigError("l_max must be >= 1");
  if (uses("agglomerative") && !corefamily.r_max) {
    throw ConfigError("agglomerative search needs corefamily.r_max");
  }
  // Resolves auto values early so that inadmissible settings surface here.
  (void)accounts();
  (void)alpha();
  if (uses("detect") || uses("agglomerative") || uses("removal")) {
    (void)detection_x();
    (void)min_conditional();
  }
}

std::size_t ScenarioConfig::targeted_ads() const {
  if (workload.kind == WorkloadKind::kOverlapping) {
    return workload.groups * workload.ads_per_group;
  }
  if (workload.targeted_per_input > 0.0) {
    return static_cast<std::size_t>(std::llround(
        workload.targeted_per_input * static_cast<double>(n_inputs)));
  }
  return workload.targeted_ads;
}

std::size_t ScenarioConfig::untargeted_ads() const {
  if (workload.untargeted_per_input > 0.0) {
    return static_cast<std::size_t>(std::llround(
        workload.untargeted_per_input * static_cast<double>(n_inputs)));
  }
  return workload.untargeted_ads;
}

std::size_t ScenarioConfig::accounts() const {
  if (placement.accounts) return *placement.accounts;
  return SizedAccountCount(std::max<std::size_t>(n_inputs, 2), placement.c);
}

double ScenarioConfig::detection_ratio() const {
  if (corefamily.ratio) return *corefamily.ratio;
  return service.p_in > 0.0 ? service.p_out / service.p_in : 0.0;
}

namespace {

RecommendedConfig Recommended(const ScenarioConfig& cfg) {
  const int l = static_cast<int>(cfg.corefamily.l_max);
  const int r = static_cast<int>(
      cfg.corefamily.r_max.value_or(cfg.workload.core_r));
  const RecommendedConfig rec = RecommendConfig(l, r, cfg.detection_ratio());
  if (!rec.admissible) {
    throw ConfigError("ratio " + std::to_string(cfg.detection_ratio()) +
                      " is not below M_{l,r} = " + std::to_string(rec.m_lr) +
                      "; set alpha and x explicitly");
  }
  return rec;
}

}  // namespace

double ScenarioConfig::alpha() const {
  if (placement.alpha) return *placement.alpha;
  return Recommended(*this).alpha;
}

double ScenarioConfig::detection_x() const {
  if (corefamily.x) return *corefamily.x;
  return Recommended(*this).x;
}

std::size_t ScenarioConfig::min_conditional() const {
  if (corefamily.min_conditional) return *corefamily.min_conditional;
  try {
    return MinConditionalSize(detection_x(), alpha(),
                              static_cast<int>(corefamily.l_max), n_inputs);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("corefamily.min_conditional: ") + e.what());
  }
}

bool ScenarioConfig::uses(std::string_view algorithm) const {
  return std::find(algorithms.begin(), algorithms.end(), algorithm) !=
         algorithms.end();
}

ScenarioConfig GmailLikePreset() {
  ScenarioConfig cfg;
  cfg.name = "gmail-like";
  cfg.preset = "gmail-like";
  cfg.n_inputs = 20;
  cfg.workload.targeted_per_input = 6.0;
  cfg.workload.untargeted_per_input = 4.0;
  cfg.service.p_in = 0.45;
  cfg.service.p_out = 0.02;
  cfg.service.p_empty = 0.1;
  cfg.service.contextual = true;
  cfg.service.ctx_p_in = 0.3;
  cfg.service.ctx_p_out = 0.01;
  cfg.service.ctx_p_empty = 0.02;
  cfg.service.displays_per_input = 5;
  cfg.placement.alpha = 0.5;
  cfg.placement.accounts = 16;
  cfg.algorithms = {"bayes", "contextual", "composite"};
  return cfg;
}

ScenarioConfig AmazonLikePreset() {
  ScenarioConfig cfg;
  cfg.name = "amazon-like";
  cfg.preset = "amazon-like";
  cfg.n_inputs = 20;
  cfg.workload.targeted_per_input = 1.0;
  cfg.workload.untargeted_per_input = 1.0;
  cfg.service.p_in = 0.85;
  cfg.service.p_out = 0.01;
  cfg.service.p_empty = 0.1;
  cfg.placement.alpha = 0.5;
  cfg.placement.accounts = 8;
  cfg.algorithms = {"bayes"};
  return cfg;
}

ScenarioConfig PresetByName(std::string_view name) {
  if (name == "gmail-like") return GmailLikePreset();
  if (name == "amazon-like") return AmazonLikePreset();
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

ScenarioConfig ParseScenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("line " + std::to_string(LineAt(text, e.byte)) +
                      ": malformed JSON: " + e.what());
  }
  const Reader rd(text);
  rd.CheckKeys(root,
               {"name", "preset", "n_inputs", "trials", "rounds", "seed",
                "threads", "workload", "service", "placement", "algorithms",
                "setint", "bayes", "corefamily", "match_mode"},
               "scenario");

  ScenarioConfig cfg;
  if (root.contains("preset") && !root.at("preset").is_null()) {
    std::string preset;
    rd.Get(root, "preset", preset);
    try {
      cfg = PresetByName(preset);
    } catch (const ConfigError& e) {
      rd.Fail("preset", e.what());
    }
  }
  rd.Get(root, "name", cfg.name);
  rd.Get(root, "n_inputs", cfg.n_inputs);
  rd.Get(root, "trials", cfg.trials);
  rd.Get(root, "rounds", cfg.rounds);
  rd.Get(root, "threads", cfg.threads);
  if (root.contains("seed")) {
    const json& v = root.at("seed");
    if (!v.is_number_integer()) rd.Fail("seed", "expected an integer");
    cfg.seed = v.get<std::uint64_t>();
  }

  if (root.contains("workload")) {
    const json& w = root.at("workload");
    rd.CheckKeys(w,
                 {"kind", "targeted_ads", "untargeted_ads",
                  "targeted_per_input", "untargeted_per_input", "core",
                  "groups", "ads_per_group"},
                 "workload");
    if (w.contains("kind")) {
      std::string kind;
      rd.Get(w, "kind", kind);
      if (kind == "non_overlapping") {
        cfg.workload.kind = WorkloadKind::kNonOverlapping;
      } else if (kind == "overlapping") {
        cfg.workload.kind = WorkloadKind::kOverlapping;
      } else {
        rd.Fail("kind", "expected \"non_overlapping\" or \"overlapping\"");
      }
    }
    rd.Get(w, "targeted_ads", cfg.workload.targeted_ads);
    rd.Get(w, "untargeted_ads", cfg.workload.untargeted_ads);
    rd.Get(w, "targeted_per_input", cfg.workload.targeted_per_input);
    rd.Get(w, "untargeted_per_input", cfg.workload.untargeted_per_input);
    rd.Get(w, "ads_per_group", cfg.workload.ads_per_group);
    if (w.contains("core")) {
      const json& c = w.at("core");
      rd.CheckKeys(c, {"l", "r"}, "core");
      rd.Get(c, "l", cfg.workload.core_l);
      rd.Get(c, "r", cfg.workload.core_r);
    }
    if (w.contains("groups")) {
      const json& g = w.at("groups");
      rd.CheckKeys(g, {"count", "size"}, "groups");
      rd.Get(g, "count", cfg.workload.groups);
      rd.Get(g, "size", cfg.workload.group_size);
    }
  }

  if (root.contains("service")) {
    const json& s = root.at("service");
    rd.CheckKeys(s,
                 {"p_in", "p_out", "p_empty", "contextual", "ctx_p_in",
                  "ctx_p_out", "ctx_p_empty", "displays_per_input"},
                 "service");
    rd.Get(s, "p_in", cfg.service.p_in);
    rd.Get(s, "p_out", cfg.service.p_out);
    rd.Get(s, "p_empty", cfg.service.p_empty);
    rd.Get(s, "contextual", cfg.service.contextual);
    rd.Get(s, "ctx_p_in", cfg.service.ctx_p_in);
    rd.Get(s, "ctx_p_out", cfg.service.ctx_p_out);
    rd.Get(s, "ctx_p_empty", cfg.service.ctx_p_empty);
    rd.Get(s, "displays_per_input", cfg.service.displays_per_input);
  }

  if (root.contains("placement")) {
    const json& p = root.at("placement");
    rd.CheckKeys(p,
                 {"alpha", "accounts", "c", "matching", "match_threshold",
                  "raw_distance"},
                 "placement");
    rd.GetAuto(p, "alpha", cfg.placement.alpha);
    rd.GetOptional(p, "accounts", cfg.placement.accounts);
    if (p.contains("c")) {
      rd.Get(p, "c", cfg.placement.c);
      if (!p.contains("accounts")) cfg.placement.accounts.reset();
    }
    rd.Get(p, "matching", cfg.placement.matching);
    rd.Get(p, "match_threshold", cfg.placement.match_threshold);
    rd.Get(p, "raw_distance", cfg.placement.raw_distance);
  }

  if (root.contains("algorithms")) {
    const json& a = root.at("algorithms");
    if (!a.is_array()) rd.Fail("algorithms", "expected an array of names");
    cfg.algorithms.clear();
    for (const auto& name : a) {
      if (!name.is_string()) rd.Fail("algorithms", "expected names");
      cfg.algorithms.push_back(name.get<std::string>());
    }
  }

  if (root.contains("setint")) {
    const json& s = root.at("setint");
    rd.CheckKeys(s,
                 {"threshold", "min_active", "max_combination_size",
                  "inactive_max_fraction"},
                 "setint");
    rd.Get(s, "threshold", cfg.setint.threshold);
    rd.Get(s, "min_active", cfg.setint.min_active_accounts);
    rd.GetOptional(s, "max_combination_size",
                   cfg.setint.max_combination_size);
    rd.GetOptional(s, "inactive_max_fraction",
                   cfg.setint.inactive_max_fraction);
  }

  if (root.contains("bayes")) {
    const json& b = root.at("bayes");
    rd.CheckKeys(b, {"score_floor", "learn", "tol", "max_iter", "init"},
                 "bayes");
    rd.Get(b, "score_floor", cfg.bayes.score_floor);
    rd.Get(b, "learn", cfg.bayes.learn);
    rd.Get(b, "tol", cfg.bayes.options.tol);
    rd.Get(b, "max_iter", cfg.bayes.options.max_iter);
    cfg.bayes.options.score_floor = cfg.bayes.score_floor;
    if (b.contains("init")) {
      const json& i = b.at("init");
      rd.CheckKeys(i, {"p_in", "p_out", "p_empty", "priors"}, "init");
      rd.Get(i, "p_in", cfg.bayes.init.p_in);
      rd.Get(i, "p_out", cfg.bayes.init.p_out);
      rd.Get(i, "p_empty", cfg.bayes.init.p_empty);
      if (i.contains("priors")) {
        const json& pr = i.at("priors");
        if (!pr.is_array()) rd.Fail("priors", "expected an array");
        cfg.bayes.init.priors.clear();
        for (const auto& v : pr) {
          if (!v.is_number()) rd.Fail("priors", "expected numbers");
          cfg.bayes.init.priors.push_back(v.get<double>());
        }
      }
    }
  }

  if (root.contains("corefamily")) {
    const json& c = root.at("corefamily");
    rd.CheckKeys(c,
                 {"x", "ratio", "l_max", "r_max", "test_budget", "min_active",
                  "min_conditional"},
                 "corefamily");
    rd.GetAuto(c, "x", cfg.corefamily.x);
    rd.GetAuto(c, "ratio", cfg.corefamily.ratio);
    rd.Get(c, "l_max", cfg.corefamily.l_max);
    rd.GetOptional(c, "r_max", cfg.corefamily.r_max);
    rd.Get(c, "min_active", cfg.corefamily.min_active);
    rd.GetOptional(c, "min_conditional", cfg.corefamily.min_conditional);
    if (c.contains("test_budget")) {
      const json& v = c.at("test_budget");
      if (v.is_null()) {
        cfg.corefamily.test_budget.reset();
      } else if (v.is_number_integer()) {
        cfg.corefamily.test_budget = v.get<std::uint64_t>();
      } else {
        rd.Fail("test_budget", "expected an integer or null");
      }
    }
  }

  if (root.contains("match_mode")) {
    std::string mode;
    rd.Get(root, "match_mode", mode);
    try {
      cfg.match_mode = MatchModeFromString(mode);
    } catch (const ConfigError& e) {
      rd.Fail("match_mode", e.what());
    }
  }

  cfg.Validate();
  return cfg;
}

ScenarioConfig LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseScenario(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string ScenarioToJson(const ScenarioConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["preset"] = cfg.preset.empty() ? json(nullptr) : json(cfg.preset);
  j["n_inputs"] = cfg.n_inputs;
  j["trials"] = cfg.trials;
  j["rounds"] = cfg.rounds;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  const auto& w = cfg.workload;
  j["workload"] = {{"kind", ToString(w.kind)},
                   {"targeted_ads", w.targeted_ads},
                   {"untargeted_ads", w.untargeted_ads},
                   {"targeted_per_input", w.targeted_per_input},
                   {"untargeted_per_input", w.untargeted_per_input},
                   {"core", {{"l", w.core_l}, {"r", w.core_r}}},
                   {"groups", {{"count", w.groups}, {"size", w.group_size}}},
                   {"ads_per_group", w.ads_per_group}};
  const auto& s = cfg.service;
  j["service"] = {{"p_in", s.p_in},
                  {"p_out", s.p_out},
                  {"p_empty", s.p_empty},
                  {"contextual", s.contextual},
                  {"ctx_p_in", s.ctx_p_in},
                  {"ctx_p_out", s.ctx_p_out},
                  {"ctx_p_empty", s.ctx_p_empty},
                  {"displays_per_input", s.displays_per_input}};
  const auto& p = cfg.placement;
  j["placement"] = {
      {"alpha", p.alpha ? json(*p.alpha) : json("auto")},
      {"accounts", OptionalJson(p.accounts)},
      {"c", p.c},
      {"matching", p.matching},
      {"match_threshold", p.match_threshold},
      {"raw_distance", p.raw_distance}};
  j["algorithms"] = cfg.algorithms;
  j["setint"] = {
      {"threshold", cfg.setint.threshold},
      {"min_active", cfg.setint.min_active_accounts},
      {"max_combination_size", OptionalJson(cfg.setint.max_combination_size)},
      {"inactive_max_fraction",
       OptionalJson(cfg.setint.inactive_max_fraction)}};
  j["bayes"] = {{"score_floor", cfg.bayes.score_floor},
                {"learn", cfg.bayes.learn},
                {"tol", cfg.bayes.options.tol},
                {"max_iter", cfg.bayes.options.max_iter},
                {"init", ParamsJson(cfg.bayes.init)}};
  const auto& c = cfg.corefamily;
  j["corefamily"] = {{"x", c.x ? json(*c.x) : json("auto")},
                     {"ratio", c.ratio ? json(*c.ratio) : json("auto")},
                     {"l_max", c.l_max},
                     {"r_max", OptionalJson(c.r_max)},
                     {"test_budget", OptionalJson(c.test_budget)},
                     {"min_active", c.min_active},
                     {"min_conditional", OptionalJson(c.min_conditional)}};
  j["match_mode"] = ToString(cfg.match_mode);
  return j.dump(2);
}

std::string ScenarioHash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : ScenarioToJson(cfg)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace xcorr
