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

#include "plink/encoder/represent.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"
#include "plink/core/kernels.hpp"

namespace plink::encoder {

using nlohmann::json;

namespace {

std::vector<float> pool(const std::vector<std::vector<float>>& vecs,
                        const std::vector<size_t>& which, size_t dim) {
  std::vector<float> flat(which.size() * dim);
  for (size_t i = 0; i < which.size(); ++i)
    std::copy(vecs[which[i]].begin(), vecs[which[i]].end(),
              flat.begin() + static_cast<ptrdiff_t>(i * dim));
  std::vector<float> out(dim);
  kernels::max_pool(flat.data(), which.size(), dim, out.data());
  return out;
}

std::vector<size_t> all_indices(size_t n) {
  std::vector<size_t> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

std::vector<float> mention_string_rep(const EncoderAdapter& enc,
                                      const corpus::Document& doc,
                                      const corpus::Mention& mention) {
  if (mention.sentence_index >= doc.sentences.size())
    throw ValidationError("mention " + mention.id + ": sentence out of range");
  const std::string& sentence = doc.sentences[mention.sentence_index];
  auto subwords = enc.tokenize(sentence);
  if (subwords.size() > enc.subword_limit())
    subwords.resize(enc.subword_limit());

  std::vector<size_t> selected;
  for (size_t i = 0; i < subwords.size(); ++i)
    if (subwords[i].start < mention.end && subwords[i].end > mention.start)
      selected.push_back(i);
  if (selected.empty())
    throw ValidationError("mention " + mention.id +
                          ": span aligns with no subword");

  const auto vectors = enc.encode(subwords);
  return pool(vectors, selected, enc.dim());
}

std::vector<float> entity_name_rep(const EncoderAdapter& enc,
                                   const kb::Entity& entity) {
  if (entity.name.empty())
    throw ValidationError("entity " + entity.id + " has an empty name");
  auto subwords = enc.tokenize(entity.name);
  if (subwords.empty())
    throw ValidationError("entity " + entity.id +
                          ": name tokenizes to no subwords");
  if (subwords.size() > enc.subword_limit())
    subwords.resize(enc.subword_limit());
  const auto vectors = enc.encode(subwords);
  return pool(vectors, all_indices(vectors.size()), enc.dim());
}

std::vector<float> mention_context_rep(const EncoderAdapter& enc,
                                       const corpus::Document& doc,
                                       const corpus::Mention& mention) {
  if (mention.sentence_index >= doc.sentences.size())
    throw ValidationError("mention " + mention.id + ": sentence out of range");
  const size_t n_sentences = doc.sentences.size();
  const size_t center = mention.sentence_index;
  const size_t limit = enc.subword_limit();

  std::vector<std::vector<Subword>> tokenized(n_sentences);
  auto tokens_of = [&](size_t s) -> const std::vector<Subword>& {
    if (tokenized[s].empty()) tokenized[s] = enc.tokenize(doc.sentences[s]);
    return tokenized[s];
  };

  std::vector<Subword> window = tokens_of(center);
  if (window.size() > limit) {
    // The mention sentence alone exceeds the budget: truncate, never fail.
    window.resize(limit);
    const auto vectors = enc.encode(window);
    return pool(vectors, all_indices(vectors.size()), enc.dim());
  }

  // Grow the window alternately after/before, starting after.  The first
  // sentence that would push the window past the limit stops the expansion.
  size_t total = window.size();
  size_t first = center, last = center;
  bool after_turn = true;
  bool stopped = false;
  while (!stopped && (last + 1 < n_sentences || first > 0)) {
    if (after_turn) {
      if (last + 1 < n_sentences) {
        const size_t count = tokens_of(last + 1).size();
        if (total + count > limit) break;
        ++last;
        total += count;
      }
    } else {
      if (first > 0) {
        const size_t count = tokens_of(first - 1).size();
        if (total + count > limit) break;
        --first;
        total += count;
      }
    }
    after_turn = !after_turn;
  }

  std::vector<Subword> tokens;
  tokens.reserve(total);
  for (size_t s = first; s <= last; ++s) {
    const auto& sentence_tokens = tokens_of(s);
    tokens.insert(tokens.end(), sentence_tokens.begin(), sentence_tokens.end());
  }
  if (tokens.empty()) return std::vector<float>(enc.dim(), 0.0f);
  const auto vectors = enc.encode(tokens);
  return pool(vectors, all_indices(vectors.size()), enc.dim());
}

std::vector<float> entity_context_rep(const EncoderAdapter& enc,
                                      const kb::Entity& entity) {
  auto subwords = enc.tokenize(entity.description);
  if (subwords.empty()) return std::vector<float>(enc.dim(), 0.0f);
  if (subwords.size() > enc.subword_limit())
    subwords.resize(enc.subword_limit());
  const auto vectors = enc.encode(subwords);
  return pool(vectors, all_indices(vectors.size()), enc.dim());
}

RepresentationBundle build_bundle(const EncoderAdapter& enc,
                                  const kb::KnowledgeBase& kb,
                                  const corpus::Document& doc,
                                  const corpus::Mention& mention,
                                  const std::string& entity_id,
                                  RepCache* cache) {
  const kb::Entity& entity = kb.entity(entity_id);
  const std::string fp = enc.fingerprint();

  auto cached = [&](const std::string& key,
                    const std::function<std::vector<float>()>& compute) {
    if (!cache) return compute();
    return cache->get_or_compute(key, fp, compute);
  };

  RepresentationBundle bundle;
  bundle.m_s = cached("ms|" + fp + "|" + doc.id + "|" + mention.id,
                      [&] { return mention_string_rep(enc, doc, mention); });
  bundle.m_c = cached("mc|" + fp + "|" + doc.id + "|" + mention.id,
                      [&] { return mention_context_rep(enc, doc, mention); });
  bundle.e_s = cached("es|" + fp + "|" + entity_id,
                      [&] { return entity_name_rep(enc, entity); });
  bundle.e_c = cached("ec|" + fp + "|" + entity_id,
                      [&] { return entity_context_rep(enc, entity); });
  bundle.popularity = static_cast<float>(kb.popularity_score(entity_id));
  return bundle;
}

RepCache::RepCache(std::filesystem::path directory)
    : directory_(std::move(directory)) {
  std::filesystem::create_directories(*directory_);
  const auto manifest_path = *directory_ / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    json manifest;
    try {
      manifest = json::parse(read_text_file(manifest_path));
    } catch (const json::exception& e) {
      throw ParseError("bad cache manifest " + manifest_path.string() + ": " +
                       e.what());
    }
    const json entries = manifest.value("entries", json::object());
    for (const auto& [key, file] : entries.items())
      files_[key] = file.get<std::string>();
    const json fingerprints = manifest.value("fingerprints", json::array());
    for (const auto& fp : fingerprints)
      fingerprints_.push_back(fp.get<std::string>());
  }
}

RepCache::~RepCache() {
  try {
    flush();
  } catch (...) {
    // Destructors must not throw; a failed flush only loses cache warmth.
  }
}

std::optional<std::vector<float>> RepCache::read_entry(const std::string& key) {
  auto it = files_.find(key);
  if (it == files_.end() || !directory_) return std::nullopt;
  const auto path = *directory_ / it->second;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const uint64_t n = read_u64(in);
  std::vector<float> v(n);
  read_f32_array(in, v.data(), n);
  return v;
}

void RepCache::write_entry(const std::string& key,
                           const std::vector<float>& value) {
  if (!directory_) return;
  const std::string file = fnv1a64_hex(key) + ".vec";
  const auto path = *directory_ / file;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write cache entry: " + path.string());
  write_u64(out, value.size());
  write_f32_array(out, value.data(), value.size());
  files_[key] = file;
  dirty_ = true;
}

std::vector<float> RepCache::get_or_compute(
    const std::string& key, const std::string& fingerprint,
    const std::function<std::vector<float>()>& compute) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memory_.find(key);
    if (it != memory_.end()) {
      ++hits_;
      return it->second;
    }
    if (auto disk = read_entry(key)) {
      ++hits_;
      memory_[key] = *disk;
      return *disk;
    }
  }
  // Compute outside the lock; last writer wins on a race, and values are
  // deterministic so both writers agree.
  std::vector<float> value = compute();
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = memory_.emplace(key, std::move(value));
  if (inserted) {
    ++misses_;
    write_entry(key, it->second);
    if (std::find(fingerprints_.begin(), fingerprints_.end(), fingerprint) ==
        fingerprints_.end()) {
      fingerprints_.push_back(fingerprint);
      dirty_ = true;
    }
  }
  return it->second;
}

void RepCache::flush() {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!directory_ || !dirty_) return;
  json manifest;
  manifest["version"] = 1;
  manifest["entries"] = json::object();
  for (const auto& [key, file] : files_) manifest["entries"][key] = file;
  manifest["fingerprints"] = fingerprints_;
  write_text_file(*directory_ / "manifest.json", manifest.dump(2) + "\n");
  dirty_ = false;
}

}  // namespace plink::encoder
