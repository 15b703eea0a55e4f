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

#include "plink/kb/kb.hpp"

#include <algorithm>

#include <json.hpp>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"

namespace plink::kb {

using nlohmann::json;

void KnowledgeBase::add_entity(Entity entity) {
  if (entity.id.empty()) throw ValidationError("entity with empty id");
  auto [it, inserted] = entities_.emplace(entity.id, std::move(entity));
  if (!inserted)
    throw ValidationError("duplicate entity id: " + it->first);
  finalized_ = false;
}

void KnowledgeBase::add_anchor(const std::string& surface,
                               const std::string& entity_id, uint64_t count) {
  if (!contains(entity_id))
    throw NotFoundError("anchor target not in KB: " + entity_id);
  anchor_stats_[surface][entity_id] += count;
}

size_t KnowledgeBase::finalize(PopularityMode mode) {
  mode_ = mode;
  size_t dropped = 0;
  for (auto& [id, entity] : entities_) {
    std::sort(entity.outlinks.begin(), entity.outlinks.end());
    entity.outlinks.erase(
        std::unique(entity.outlinks.begin(), entity.outlinks.end()),
        entity.outlinks.end());
    auto keep = std::remove_if(
        entity.outlinks.begin(), entity.outlinks.end(),
        [&](const std::string& target) { return !contains(target); });
    dropped += static_cast<size_t>(entity.outlinks.end() - keep);
    entity.outlinks.erase(keep, entity.outlinks.end());
  }

  inlink_counts_.clear();
  if (mode_ == PopularityMode::kInlinks) {
    for (const auto& [id, entity] : entities_)
      for (const auto& target : entity.outlinks) ++inlink_counts_[target];
  }

  std::vector<size_t> counts;
  counts.reserve(entities_.size());
  for (const auto& [id, entity] : entities_)
    counts.push_back(crosslink_count(entity));
  std::sort(counts.begin(), counts.end());
  if (counts.empty()) {
    median_outlinks_ = 0.0;
  } else if (counts.size() % 2 == 1) {
    median_outlinks_ = static_cast<double>(counts[counts.size() / 2]);
  } else {
    median_outlinks_ = (static_cast<double>(counts[counts.size() / 2 - 1]) +
                        static_cast<double>(counts[counts.size() / 2])) /
                       2.0;
  }
  finalized_ = true;
  return dropped;
}

const Entity& KnowledgeBase::entity(const std::string& id) const {
  auto it = entities_.find(id);
  if (it == entities_.end()) throw NotFoundError("unknown entity id: " + id);
  return it->second;
}

size_t KnowledgeBase::crosslink_count(const Entity& e) const {
  if (mode_ == PopularityMode::kInlinks) {
    auto it = inlink_counts_.find(e.id);
    return it == inlink_counts_.end() ? 0 : it->second;
  }
  return e.outlinks.size();
}

double KnowledgeBase::popularity_score(const std::string& id) const {
  const Entity& e = entity(id);
  if (median_outlinks_ <= 0.0) return 0.0;
  return static_cast<double>(crosslink_count(e)) / median_outlinks_;
}

KnowledgeBase load_kb(const std::filesystem::path& path, LoadStats* stats,
                      PopularityMode mode) {
  KnowledgeBase kb;
  std::string language;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": malformed entity line: " + e.what());
    }
    try {
      Entity entity;
      entity.id = obj.at("id").get<std::string>();
      entity.language = obj.at("language").get<std::string>();
      entity.name = obj.at("name").get<std::string>();
      entity.description = obj.value("description", std::string());
      if (obj.contains("wiki_title") && !obj["wiki_title"].is_null())
        entity.wiki_title = obj["wiki_title"].get<std::string>();
      if (obj.contains("outlinks"))
        entity.outlinks = obj["outlinks"].get<std::vector<std::string>>();
      if (language.empty()) language = entity.language;
      kb.add_entity(std::move(entity));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad entity record: " + e.what());
    }
  });
  kb.set_language(language);
  const size_t dropped = kb.finalize(mode);
  if (stats) {
    stats->entities = kb.size();
    stats->dangling_links_dropped = dropped;
  }
  return kb;
}

}  // namespace plink::kb
