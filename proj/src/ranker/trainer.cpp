// Copyright 2026 The plink authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plink/ranker/trainer.hpp"

#include <set>

namespace plink::ranker {

std::vector<std::string> sample_negatives(
    const std::vector<std::string>& candidate_ids, const std::string& gold_id,
    size_t n, const kb::KnowledgeBase& kb, Rng& rng) {
  if (n < 1) throw ValidationError("sample_negatives: n must be >= 1");

  // Candidate pool first, order preserved, gold and duplicates removed.
  std::vector<std::string> pool;
  std::set<std::string> seen;
  for (const auto& id : candidate_ids) {
    if (id == gold_id) continue;
    if (seen.insert(id).second) pool.push_back(id);
  }

  std::vector<std::string> out;
  if (pool.size() <= n) {
    out = pool;
  } else {
    for (size_t index : rng.sample_indices(pool.size(), n))
      out.push_back(pool[index]);
  }

  if (out.size() < n) {
    // Top up uniformly from the KB, excluding gold and already chosen.
    std::vector<std::string> rest;
    for (const auto& [id, entity] : kb.entities()) {
      if (id == gold_id || seen.count(id)) continue;
      rest.push_back(id);
    }
    const size_t need = std::min(n - out.size(), rest.size());
    for (size_t index : rng.sample_indices(rest.size(), need))
      out.push_back(rest[index]);
  }

  if (out.empty())
    throw ValidationError("sample_negatives: no entity besides the gold one");
  return out;
}

}  // namespace plink::ranker
