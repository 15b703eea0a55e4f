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

#include "plink/corpus/silver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"
#include "plink/core/rng.hpp"
#include "plink/core/utf8.hpp"

namespace plink::corpus {

using nlohmann::json;

std::vector<AnchoredDoc> load_anchored_docs(
    const std::filesystem::path& path) {
  std::vector<AnchoredDoc> docs;
  std::set<std::string> seen;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": malformed anchored-doc line: " + e.what());
    }
    AnchoredDoc ad;
    try {
      ad.doc.id = obj.at("id").get<std::string>();
      ad.doc.language = obj.at("language").get<std::string>();
      ad.doc.sentences = obj.at("sentences").get<std::vector<std::string>>();
      for (const auto& a : obj.value("anchors", json::array())) {
        Anchor anchor;
        anchor.sentence_index = a.at("sentence_index").get<size_t>();
        anchor.start = a.at("start").get<size_t>();
        anchor.end = a.at("end").get<size_t>();
        anchor.target = a.at("target").get<std::string>();
        ad.anchors.push_back(std::move(anchor));
      }
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad anchored-doc record: " + e.what());
    }
    if (ad.doc.sentences.empty())
      throw ValidationError("document " + ad.doc.id + " has no sentences");
    if (!seen.insert(ad.doc.id).second)
      throw ValidationError("duplicate document id: " + ad.doc.id);
    for (const Anchor& a : ad.anchors) {
      if (a.sentence_index >= ad.doc.sentences.size())
        throw ValidationError("anchor in " + ad.doc.id +
                              ": sentence_index out of range");
      const size_t n = utf8::length(ad.doc.sentences[a.sentence_index]);
      if (!(a.start < a.end && a.end <= n))
        throw ValidationError("anchor in " + ad.doc.id + ": span out of range");
    }
    docs.push_back(std::move(ad));
  });
  return docs;
}

Dataset build_silver_dataset(const std::vector<AnchoredDoc>& anchored_docs,
                             const kb::KnowledgeBase& kb,
                             const std::vector<std::string>& seed_entities,
                             double nil_fraction, uint64_t rng_seed,
                             SilverStats* stats) {
  if (!(nil_fraction >= 0.0 && nil_fraction < 1.0))
    throw ValidationError("nil_fraction must be in [0, 1)");

  SilverStats local;
  Rng rng(rng_seed);

  // target entity -> anchor sites, in document order.
  std::map<std::string, std::vector<size_t>> pages_of_target;
  for (size_t d = 0; d < anchored_docs.size(); ++d)
    for (const Anchor& a : anchored_docs[d].anchors) {
      auto& pages = pages_of_target[a.target];
      if (pages.empty() || pages.back() != d) pages.push_back(d);
    }

  // Iterate seeds in sorted order so page selection is reproducible
  // regardless of the caller's ordering.
  std::vector<std::string> seeds(seed_entities);
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::set<size_t> selected_pages;
  for (const auto& seed : seeds) {
    auto it = pages_of_target.find(seed);
    if (it == pages_of_target.end()) {
      ++local.seeds_skipped;
      continue;
    }
    // Sampling one anchor of the seed selects the page that contains it.
    const auto& pages = it->second;
    std::vector<size_t> sites;  // page index per anchor of this seed
    for (size_t d : pages)
      for (const Anchor& a : anchored_docs[d].anchors)
        if (a.target == seed) sites.push_back(d);
    const size_t pick = static_cast<size_t>(rng.below(sites.size()));
    selected_pages.insert(sites[pick]);
  }

  Dataset ds;
  ds.split = "train";
  for (size_t d : selected_pages) {
    const AnchoredDoc& ad = anchored_docs[d];
    ds.documents.emplace(ad.doc.id, ad.doc);
    size_t k = 0;
    for (const Anchor& a : ad.anchors) {
      if (!kb.contains(a.target)) {
        ++local.anchors_dropped;
        continue;
      }
      Mention m;
      m.id = ad.doc.id + ":a" + std::to_string(k++);
      m.doc_id = ad.doc.id;
      m.sentence_index = a.sentence_index;
      m.start = a.start;
      m.end = a.end;
      m.surface =
          utf8::substr(ad.doc.sentences[a.sentence_index], a.start, a.end);
      m.gold = a.target;
      m.language = ad.doc.language;
      ds.mentions.push_back(std::move(m));
    }
  }

  const size_t n = ds.mentions.size();
  // floor(fraction * n), nudged so exact products do not round down.
  const size_t n_nil = static_cast<size_t>(
      std::floor(nil_fraction * static_cast<double>(n) + 1e-9));
  auto nil_indices = rng.sample_indices(n, n_nil);
  for (size_t index : nil_indices) {
    Mention& m = ds.mentions[index];
    m.nil_original = m.gold;
    m.gold = kNil;
  }
  local.nil_relabeled = n_nil;

  if (stats) *stats = local;
  return ds;
}

size_t accumulate_anchors(const std::vector<AnchoredDoc>& anchored_docs,
                          kb::KnowledgeBase& kb) {
  size_t skipped = 0;
  for (const AnchoredDoc& ad : anchored_docs) {
    for (const Anchor& a : ad.anchors) {
      if (!kb.contains(a.target)) {
        ++skipped;
        continue;
      }
      const std::string surface =
          utf8::substr(ad.doc.sentences[a.sentence_index], a.start, a.end);
      kb.add_anchor(surface, a.target);
    }
  }
  return skipped;
}

}  // namespace plink::corpus
