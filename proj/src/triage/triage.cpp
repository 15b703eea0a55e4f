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

#include "plink/triage/triage.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "plink/core/error.hpp"

namespace plink::triage {

void TriageConfig::validate() const {
  if (k < 1) throw ValidationError("triage: k must be >= 1");
  if (l < k) throw ValidationError("triage: l must be >= k");
}

std::vector<Candidate> estimate_prior(const kb::KnowledgeBase& kb,
                                      const std::string& surface) {
  auto it = kb.anchor_stats().find(surface);
  if (it == kb.anchor_stats().end()) return {};
  uint64_t total = 0;
  for (const auto& [id, count] : it->second) total += count;
  std::vector<Candidate> out;
  out.reserve(it->second.size());
  for (const auto& [id, count] : it->second)
    out.push_back({id, static_cast<double>(count) / static_cast<double>(total)});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.prior != b.prior) return a.prior > b.prior;
    return a.entity_id < b.entity_id;
  });
  return out;
}

std::vector<Candidate> generate_candidates(const kb::KnowledgeBase& kb,
                                           const kb::NameIndex& index,
                                           const std::string& surface,
                                           const TriageConfig& config) {
  config.validate();
  std::vector<Candidate> priors = estimate_prior(kb, surface);
  if (!priors.empty()) {
    if (priors.size() > config.k) priors.resize(config.k);
    return priors;
  }
  const auto ids = index.query(surface, config.k);
  std::vector<Candidate> out;
  out.reserve(ids.size());
  const double uniform = ids.empty() ? 0.0 : 1.0 / static_cast<double>(ids.size());
  for (const auto& id : ids) out.push_back({id, uniform});
  return out;
}

std::vector<size_t> allocate_proportional(const std::vector<double>& priors,
                                          size_t l) {
  if (priors.empty()) return {};
  double sum = 0.0;
  for (double p : priors) sum += p;
  std::vector<size_t> quota(priors.size(), 1);
  if (sum > 0.0) {
    for (size_t i = 0; i < priors.size(); ++i) {
      const double share = static_cast<double>(l) * priors[i] / sum;
      quota[i] = std::max<size_t>(1, static_cast<size_t>(std::floor(share + 0.5)));
    }
  }
  size_t total = 0;
  for (size_t q : quota) total += q;
  // Trim overflow starting from the lowest-prior titles (the tail of the
  // descending candidate list), never below 1 each.
  size_t i = quota.size();
  size_t stuck = 0;
  while (total > l && stuck < quota.size()) {
    i = (i == 0) ? quota.size() - 1 : i - 1;
    if (quota[i] > 1) {
      --quota[i];
      --total;
      stuck = 0;
    } else {
      ++stuck;  // all slots at the floor: total == k <= l by config
    }
  }
  return quota;
}

std::vector<Candidate> two_stage_retrieve(const kb::KnowledgeBase& kb,
                                          const kb::NameIndex& index,
                                          const std::string& surface,
                                          const TriageConfig& config) {
  config.validate();
  const std::vector<Candidate> titles =
      generate_candidates(kb, index, surface, config);

  std::map<std::string, double> best_prior;  // entity -> highest prior
  std::vector<std::string> order;            // first-retrieval order

  auto admit = [&](const std::string& id, double prior) {
    auto [it, inserted] = best_prior.emplace(id, prior);
    if (inserted)
      order.push_back(id);
    else
      it->second = std::max(it->second, prior);
  };

  if (titles.empty()) {
    // Nothing known about the surface at all: query it directly, capped at l.
    const auto ids = index.query(surface, config.l);
    const double uniform =
        ids.empty() ? 0.0 : 1.0 / static_cast<double>(ids.size());
    std::vector<Candidate> out;
    for (const auto& id : ids) out.push_back({id, uniform});
    return out;
  }

  double prior_sum = 0.0;
  for (const auto& t : titles) prior_sum += t.prior;
  std::vector<double> priors;
  for (const auto& t : titles) priors.push_back(t.prior);
  const auto quota = allocate_proportional(priors, config.l);

  bool any_title_empty = false;
  for (size_t i = 0; i < titles.size(); ++i) {
    const kb::Entity& entity = kb.entity(titles[i].entity_id);
    std::vector<std::string> retrieved;
    if (entity.wiki_title)
      retrieved = index.query(*entity.wiki_title, quota[i]);
    if (retrieved.size() < quota[i]) {
      for (const auto& id : index.query(entity.name, quota[i])) {
        if (retrieved.size() == quota[i]) break;
        if (std::find(retrieved.begin(), retrieved.end(), id) ==
            retrieved.end())
          retrieved.push_back(id);
      }
    }
    if (retrieved.empty()) {
      any_title_empty = true;
      continue;
    }
    // The title's normalized prior mass is split across its entities so the
    // candidate set remains a (sub-)distribution.
    const double mass = prior_sum > 0.0 ? titles[i].prior / prior_sum : 0.0;
    const double each = mass / static_cast<double>(retrieved.size());
    for (const auto& id : retrieved) admit(id, each);
  }

  if (order.size() < config.l && any_title_empty) {
    // Appendix-style fallback: the mention surface itself, with no prior
    // mass attached.
    for (const auto& id : index.query(surface, config.l)) {
      if (order.size() == config.l) break;
      admit(id, 0.0);
    }
  }

  std::vector<Candidate> out;
  out.reserve(order.size());
  for (const auto& id : order) out.push_back({id, best_prior[id]});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.prior != b.prior) return a.prior > b.prior;
    return a.entity_id < b.entity_id;
  });
  if (out.size() > config.l) out.resize(config.l);
  return out;
}

}  // namespace plink::triage
