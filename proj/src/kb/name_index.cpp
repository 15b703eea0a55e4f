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

#include "plink/kb/name_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"

namespace plink::kb {

namespace {
constexpr char kMagic[6] = {'P', 'L', 'I', 'D', 'X', '1'};
constexpr uint32_t kVersion = 1;
}  // namespace

std::vector<std::string> NameIndex::tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    const bool is_token_byte =
        c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
        (c >= 'A' && c <= 'Z');
    if (is_token_byte) {
      current.push_back(
          (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                 : static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

NameIndex NameIndex::build(const KnowledgeBase& kb) {
  NameIndex index;
  index.entity_ids_.reserve(kb.size());
  for (const auto& [id, entity] : kb.entities()) index.entity_ids_.push_back(id);
  // std::map iteration is already ascending by id.
  for (uint32_t i = 0; i < index.entity_ids_.size(); ++i) {
    const Entity& entity = kb.entity(index.entity_ids_[i]);
    std::set<std::string> tokens;
    for (auto& t : tokenize(entity.name)) tokens.insert(std::move(t));
    if (entity.wiki_title)
      for (auto& t : tokenize(*entity.wiki_title)) tokens.insert(std::move(t));
    for (const auto& token : tokens) index.postings_[token].push_back(i);
  }
  return index;
}

double NameIndex::idf(size_t df) const {
  // Smoothed so every indexed token scores > 0 even when it appears in
  // every document.
  const double n = static_cast<double>(entity_ids_.size());
  return std::log((n + 1.0) / (static_cast<double>(df) + 1.0)) + 1.0;
}

std::vector<std::string> NameIndex::query(std::string_view text,
                                          size_t limit) const {
  std::set<std::string> tokens;
  for (auto& t : tokenize(text)) tokens.insert(std::move(t));

  std::map<uint32_t, double> scores;
  for (const auto& token : tokens) {
    auto it = postings_.find(token);
    if (it == postings_.end()) continue;
    const double w = idf(it->second.size());
    for (uint32_t entity : it->second) scores[entity] += w;
  }

  std::vector<std::pair<double, uint32_t>> ranked;
  ranked.reserve(scores.size());
  for (const auto& [entity, score] : scores) ranked.emplace_back(score, entity);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;
                   });

  std::vector<std::string> out;
  out.reserve(std::min(limit, ranked.size()));
  for (const auto& [score, entity] : ranked) {
    if (out.size() == limit) break;
    out.push_back(entity_ids_[entity]);
  }
  return out;
}

void NameIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write index: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_u32(out, kVersion);
  write_u32(out, static_cast<uint32_t>(entity_ids_.size()));
  write_u32(out, static_cast<uint32_t>(postings_.size()));
  for (const auto& id : entity_ids_) write_string(out, id);
  for (const auto& [token, entities] : postings_) {
    write_string(out, token);
    write_u32(out, static_cast<uint32_t>(entities.size()));
    for (uint32_t e : entities) write_u32(out, e);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

NameIndex NameIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open index: " + path.string());
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + sizeof(magic), kMagic))
    throw ParseError("not a PLIDX1 index file: " + path.string());
  const uint32_t version = read_u32(in);
  if (version != kVersion)
    throw ParseError("unsupported index version " + std::to_string(version));
  const uint32_t n_entities = read_u32(in);
  const uint32_t n_tokens = read_u32(in);
  NameIndex index;
  index.entity_ids_.reserve(n_entities);
  for (uint32_t i = 0; i < n_entities; ++i)
    index.entity_ids_.push_back(read_string(in));
  for (uint32_t t = 0; t < n_tokens; ++t) {
    std::string token = read_string(in);
    const uint32_t n_postings = read_u32(in);
    std::vector<uint32_t> entities(n_postings);
    for (uint32_t p = 0; p < n_postings; ++p) {
      entities[p] = read_u32(in);
      if (entities[p] >= n_entities)
        throw ParseError("posting out of range in " + path.string());
    }
    index.postings_.emplace(std::move(token), std::move(entities));
  }
  return index;
}

}  // namespace plink::kb
