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

#ifndef PLINK_TRIAGE_TRIAGE_HPP_
#define PLINK_TRIAGE_TRIAGE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "plink/kb/kb.hpp"
#include "plink/kb/name_index.hpp"

namespace plink::triage {

struct Candidate {
  std::string entity_id;
  double prior = 0.0;  // in [0, 1]; a candidate set sums to at most 1
};

struct TriageConfig {
  size_t k = 10;   // title candidates from the prior table
  size_t l = 200;  // total entities after the second retrieval stage

  void validate() const;  // k >= 1, l >= k
};

// Anchor-count prior P(entity | surface): counts normalized over the exact
// surface string, sorted by descending prior then ascending id.  An unseen
// surface yields an empty list.
std::vector<Candidate> estimate_prior(const kb::KnowledgeBase& kb,
                                      const std::string& surface);

// Top-k of the prior table; falls back to an index query with uniform priors
// when the surface has no anchor statistics.
std::vector<Candidate> generate_candidates(const kb::KnowledgeBase& kb,
                                           const kb::NameIndex& index,
                                           const std::string& surface,
                                           const TriageConfig& config);

// Per-title retrieval quota: round-half-up of l * p_i / sum(p), floored at
// 1, then trimmed from the lowest-prior titles until the total fits l.
std::vector<size_t> allocate_proportional(const std::vector<double>& priors,
                                          size_t l);

// Two-stage retrieval: the k prior candidates act as titles; each title's
// quota of entities is fetched from the name index (wiki title first, then
// entity name), a title's prior mass is split across what it retrieved, and
// when titles come up short the mention surface itself is queried as a
// fallback.  Deduplicated keeping the highest prior, capped at l.
std::vector<Candidate> two_stage_retrieve(const kb::KnowledgeBase& kb,
                                          const kb::NameIndex& index,
                                          const std::string& surface,
                                          const TriageConfig& config);

}  // namespace plink::triage

#endif  // PLINK_TRIAGE_TRIAGE_HPP_
