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

#include "plink/corpus/corpus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"
#include "plink/core/rng.hpp"
#include "plink/core/utf8.hpp"

namespace plink::corpus {

using nlohmann::json;

const Document& Dataset::document(const std::string& doc_id) const {
  auto it = documents.find(doc_id);
  if (it == documents.end())
    throw NotFoundError("unknown document id: " + doc_id);
  return it->second;
}

namespace {

Document parse_document(const json& obj) {
  Document doc;
  doc.id = obj.at("id").get<std::string>();
  doc.language = obj.at("language").get<std::string>();
  doc.sentences = obj.at("sentences").get<std::vector<std::string>>();
  if (doc.sentences.empty())
    throw ValidationError("document " + doc.id + " has no sentences");
  for (const auto& s : doc.sentences)
    if (s.empty())
      throw ValidationError("document " + doc.id + " has an empty sentence");
  return doc;
}

void validate_mention(const Mention& m, const Dataset& ds) {
  auto it = ds.documents.find(m.doc_id);
  if (it == ds.documents.end())
    throw ValidationError("mention " + m.id + ": unknown doc_id " + m.doc_id);
  const Document& doc = it->second;
  if (m.sentence_index >= doc.sentences.size())
    throw ValidationError("mention " + m.id + ": sentence_index out of range");
  const std::string& sentence = doc.sentences[m.sentence_index];
  const size_t n = utf8::length(sentence);
  if (!(m.start < m.end && m.end <= n))
    throw ValidationError("mention " + m.id + ": span out of range");
  const std::string spanned = utf8::substr(sentence, m.start, m.end);
  if (spanned != m.surface)
    throw ValidationError("mention " + m.id + ": surface \"" + m.surface +
                          "\" does not match spanned text \"" + spanned +
                          "\"");
  if (m.gold.empty())
    throw ValidationError("mention " + m.id + ": empty gold value");
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& documents_path,
                     const std::filesystem::path& mentions_path,
                     std::string split) {
  Dataset ds;
  ds.split = std::move(split);

  for_each_line(documents_path, [&](size_t line_number, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
      Document doc = parse_document(obj);
      if (ds.documents.count(doc.id))
        throw ValidationError("duplicate document id: " + doc.id);
      ds.documents.emplace(doc.id, std::move(doc));
    } catch (const json::exception& e) {
      throw ParseError(documents_path.string() + ":" +
                       std::to_string(line_number) +
                       ": malformed document line: " + e.what());
    }
  });

  std::set<std::string> seen_mentions;
  for_each_line(mentions_path, [&](size_t line_number, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(mentions_path.string() + ":" +
                       std::to_string(line_number) +
                       ": malformed mention line: " + e.what());
    }
    Mention m;
    try {
      m.id = obj.at("id").get<std::string>();
      m.doc_id = obj.at("doc_id").get<std::string>();
      m.sentence_index = obj.at("sentence_index").get<size_t>();
      m.start = obj.at("start").get<size_t>();
      m.end = obj.at("end").get<size_t>();
      m.surface = obj.at("surface").get<std::string>();
      m.gold = obj.at("gold").get<std::string>();
      if (obj.contains("mention_type") && !obj["mention_type"].is_null())
        m.mention_type = obj["mention_type"].get<std::string>();
      if (obj.contains("nil_original") && !obj["nil_original"].is_null())
        m.nil_original = obj["nil_original"].get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(mentions_path.string() + ":" +
                       std::to_string(line_number) +
                       ": bad mention record: " + e.what());
    }
    if (!seen_mentions.insert(m.id).second)
      throw ValidationError("duplicate mention id: " + m.id);
    validate_mention(m, ds);
    m.language = ds.documents.at(m.doc_id).language;
    ds.mentions.push_back(std::move(m));
  });

  return ds;
}

void save_dataset(const Dataset& dataset,
                  const std::filesystem::path& documents_path,
                  const std::filesystem::path& mentions_path) {
  std::ostringstream docs;
  for (const auto& [id, doc] : dataset.documents) {
    json obj{{"id", doc.id},
             {"language", doc.language},
             {"sentences", doc.sentences}};
    docs << obj.dump() << '\n';
  }
  write_text_file(documents_path, docs.str());

  std::ostringstream mentions;
  for (const auto& m : dataset.mentions) {
    json obj{{"id", m.id},          {"doc_id", m.doc_id},
             {"sentence_index", m.sentence_index},
             {"start", m.start},    {"end", m.end},
             {"surface", m.surface}, {"gold", m.gold}};
    if (m.mention_type) obj["mention_type"] = *m.mention_type;
    if (m.nil_original) obj["nil_original"] = *m.nil_original;
    mentions << obj.dump() << '\n';
  }
  write_text_file(mentions_path, mentions.str());
}

Dataset downsample(const Dataset& dataset, size_t target_size, uint64_t seed) {
  if (target_size > dataset.mentions.size())
    throw ValidationError("downsample target " + std::to_string(target_size) +
                          " exceeds dataset size " +
                          std::to_string(dataset.mentions.size()));
  Rng rng(seed);
  auto keep = rng.sample_indices(dataset.mentions.size(), target_size);
  std::sort(keep.begin(), keep.end());

  Dataset out;
  out.split = dataset.split;
  for (size_t index : keep) out.mentions.push_back(dataset.mentions[index]);
  for (const auto& m : out.mentions) {
    if (!out.documents.count(m.doc_id))
      out.documents.emplace(m.doc_id, dataset.documents.at(m.doc_id));
  }
  return out;
}

}  // namespace plink::corpus
