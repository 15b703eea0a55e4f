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

#ifndef PLINK_CORPUS_SILVER_HPP_
#define PLINK_CORPUS_SILVER_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "plink/corpus/corpus.hpp"
#include "plink/kb/kb.hpp"

namespace plink::corpus {

// A span inside an anchored page that links to an entity.
struct Anchor {
  size_t sentence_index = 0;
  size_t start = 0;
  size_t end = 0;
  std::string target;
};

struct AnchoredDoc {
  Document doc;
  std::vector<Anchor> anchors;
};

// anchored_docs.jsonl: the document keys plus anchors:[{sentence_index,
// start, end, target}].  Spans are validated the same way mention spans are.
std::vector<AnchoredDoc> load_anchored_docs(const std::filesystem::path& path);

struct SilverStats {
  size_t seeds_skipped = 0;    // seed entities with no anchor anywhere
  size_t anchors_dropped = 0;  // anchors whose target is not in the KB
  size_t nil_relabeled = 0;
};

// Builds silver training data from anchor-linked pages: every seed entity
// selects the page containing one randomly sampled anchor of it, all in-KB
// anchors of the selected pages become mentions, and a uniformly random
// floor(nil_fraction * N) subset is relabeled NIL with the original target
// kept in the nil_original sidecar.  Deterministic for a fixed seed.
Dataset build_silver_dataset(const std::vector<AnchoredDoc>& anchored_docs,
                             const kb::KnowledgeBase& kb,
                             const std::vector<std::string>& seed_entities,
                             double nil_fraction, uint64_t rng_seed,
                             SilverStats* stats = nullptr);

// Adds (surface -> target) counts from every in-KB anchor to the KB's anchor
// table.  Returns the number of anchors skipped for unknown targets.
size_t accumulate_anchors(const std::vector<AnchoredDoc>& anchored_docs,
                          kb::KnowledgeBase& kb);

}  // namespace plink::corpus

#endif  // PLINK_CORPUS_SILVER_HPP_
