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

#ifndef PLINK_KB_NAME_INDEX_HPP_
#define PLINK_KB_NAME_INDEX_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plink/kb/kb.hpp"

namespace plink::kb {

// Token-level inverted index over entity names and wiki titles.  Lookup
// scores an entity by summing a smoothed inverse document frequency over the
// query tokens it shares; ties break by ascending entity id, so results are
// fully deterministic.  Immutable after construction.
class NameIndex {
 public:
  static NameIndex build(const KnowledgeBase& kb);

  // At most `limit` entity ids, best first.  Unknown tokens contribute
  // nothing; a query with no indexed token returns an empty list.
  std::vector<std::string> query(std::string_view text, size_t limit) const;

  size_t entity_count() const { return entity_ids_.size(); }
  size_t token_count() const { return postings_.size(); }

  // Single-file binary format: magic "PLIDX1", then little-endian u32
  // version/counts, the entity id table, and per-token sorted postings.
  void save(const std::filesystem::path& path) const;
  static NameIndex load(const std::filesystem::path& path);

  // Lowercases ASCII, splits on ASCII non-alphanumerics, keeps multi-byte
  // UTF-8 sequences intact.  Exposed so queries and tests tokenize the same
  // way the index does.
  static std::vector<std::string> tokenize(std::string_view text);

 private:
  double idf(size_t df) const;

  std::vector<std::string> entity_ids_;  // ascending
  std::map<std::string, std::vector<uint32_t>> postings_;  // token -> indices
};

}  // namespace plink::kb

#endif  // PLINK_KB_NAME_INDEX_HPP_
