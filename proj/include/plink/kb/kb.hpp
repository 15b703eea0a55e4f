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

#ifndef PLINK_KB_KB_HPP_
#define PLINK_KB_KB_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plink::kb {

struct Entity {
  std::string id;
  std::string language;
  std::string name;
  std::string description;
  std::optional<std::string> wiki_title;
  // Unique out-links, sorted.  Dangling targets are removed at load time.
  std::vector<std::string> outlinks;
};

struct LoadStats {
  size_t entities = 0;
  size_t dangling_links_dropped = 0;
};

// Which cross-link count feeds the popularity feature.  The shipped default
// counts an entity's own unique out-links; counting in-links instead is kept
// as a switch for experiments.
enum class PopularityMode { kOutlinks, kInlinks };

// Immutable after construction; safe for concurrent reads.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::string language) : language_(std::move(language)) {}

  // Adding entities and anchors is construction-phase only.
  void set_language(std::string language) { language_ = std::move(language); }
  void add_entity(Entity entity);  // throws ValidationError on duplicate id
  void add_anchor(const std::string& surface, const std::string& entity_id,
                  uint64_t count = 1);  // throws NotFoundError on unknown id

  // Drops outlinks whose target id is absent, recomputes the median, and
  // freezes the KB.  Returns the number of dropped links.
  size_t finalize(PopularityMode mode = PopularityMode::kOutlinks);

  const std::string& language() const { return language_; }
  const std::map<std::string, Entity>& entities() const { return entities_; }
  size_t size() const { return entities_.size(); }
  bool contains(const std::string& id) const { return entities_.count(id) > 0; }

  // Throws NotFoundError for unknown ids.
  const Entity& entity(const std::string& id) const;

  // Median of the per-entity unique cross-link counts.  0 for an empty KB;
  // the mean of the two middle values when the count is even.
  double median_outlinks() const { return median_outlinks_; }

  // Unique cross-link count of the entity divided by the KB median.
  // Returns 0 when the median is 0.  Throws NotFoundError on unknown ids.
  double popularity_score(const std::string& id) const;

  PopularityMode popularity_mode() const { return mode_; }

  // surface string -> (entity id -> anchor count)
  const std::map<std::string, std::map<std::string, uint64_t>>& anchor_stats()
      const {
    return anchor_stats_;
  }

 private:
  size_t crosslink_count(const Entity& e) const;

  std::string language_;
  std::map<std::string, Entity> entities_;
  std::map<std::string, std::map<std::string, uint64_t>> anchor_stats_;
  std::map<std::string, size_t> inlink_counts_;
  double median_outlinks_ = 0.0;
  PopularityMode mode_ = PopularityMode::kOutlinks;
  bool finalized_ = false;
};

// Loads a JSONL entity file: one object per line with keys id, language,
// name, description, wiki_title (nullable), outlinks (array of ids).
// Malformed lines and duplicate ids raise ParseError/ValidationError naming
// the line or id; dangling outlinks are dropped and counted in `stats`.
KnowledgeBase load_kb(const std::filesystem::path& path,
                      LoadStats* stats = nullptr,
                      PopularityMode mode = PopularityMode::kOutlinks);

}  // namespace plink::kb

#endif  // PLINK_KB_KB_HPP_
