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

#include "xcorr/input_matching.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xcorr/errors.h"

namespace xcorr {
namespace {

double Norm(const ContextualSignature& s) {
  double sum = 0.0;
  for (const auto& [_, v] : s.coords) sum += v * v;
  return std::sqrt(sum);
}

std::size_t Find(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

bool ContextualSignature::is_zero() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const auto& kv) { return kv.second == 0.0; });
}

std::vector<ContextualSignature> BuildSignatures(
    const ContextualCounts& counts) {
  std::vector<ContextualSignature> out(counts.n_inputs);
  for (std::size_t i = 0; i < counts.n_inputs; ++i) {
    out[i].input_id = static_cast<InputId>(i);
  }
  for (std::size_t k = 0; k < counts.outputs.size(); ++k) {
    const auto& row = counts.counts[k];
    for (std::size_t i = 0; i < row.size() && i < counts.n_inputs; ++i) {
      if (row[i] > 0) {
        out[i].coords[counts.outputs[k]] = static_cast<double>(row[i]);
      }
    }
  }
  return out;
}

double SignatureDistance(const ContextualSignature& a,
                         const ContextualSignature& b, DistanceMode mode) {
  double sa = 1.0;
  double sb = 1.0;
  if (mode == DistanceMode::kNormalized) {
    const double na = Norm(a);
    const double nb = Norm(b);
    sa = na > 0.0 ? 1.0 / na : 0.0;
    sb = nb > 0.0 ? 1.0 / nb : 0.0;
  }
  double sum = 0.0;
  auto ia = a.coords.begin();
  auto ib = b.coords.begin();
  while (ia != a.coords.end() || ib != b.coords.end()) {
    double d = 0.0;
    if (ib == b.coords.end() ||
        (ia != a.coords.end() && ia->first < ib->first)) {
      d = ia->second * sa;
      ++ia;
    } else if (ia == a.coords.end() || ib->first < ia->first) {
      d = ib->second * sb;
      ++ib;
    } else {
      d = ia->second * sa - ib->second * sb;
      ++ia;
      ++ib;
    }
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<std::vector<InputId>> ClusterInputs(
    const std::vector<ContextualSignature>& signatures, double threshold,
    DistanceMode mode) {
  if (!(threshold >= 0.0)) throw DomainError("threshold must be >= 0");
  const std::size_t n = signatures.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  // Single linkage merges exactly the connected components of the graph of
  // pairs closer than the threshold.
  for (std::size_t a = 0; a < n; ++a) {
    if (signatures[a].is_zero()) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (signatures[b].is_zero()) continue;
      if (SignatureDistance(signatures[a], signatures[b], mode) < threshold) {
        parent[Find(parent, a)] = Find(parent, b);
      }
    }
  }
  std::map<std::size_t, std::vector<InputId>> groups;
  for (std::size_t i = 0; i < n; ++i) {
    groups[Find(parent, i)].push_back(signatures[i].input_id);
  }
  std::vector<std::vector<InputId>> out;
  for (auto& [_, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace xcorr
