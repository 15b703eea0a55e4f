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

#ifndef PLINK_CORPUS_CORPUS_HPP_
#define PLINK_CORPUS_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plink::corpus {

// The distinguished gold value for mentions with no KB entry.
inline const std::string kNil = "NIL";

struct Document {
  std::string id;
  std::string language;
  std::vector<std::string> sentences;  // non-empty, no empty sentence
};

// An annotated span.  Offsets are Unicode code points into the sentence and
// the surface string always equals the spanned text, which load_dataset
// enforces.
struct Mention {
  std::string id;
  std::string doc_id;
  size_t sentence_index = 0;
  size_t start = 0;
  size_t end = 0;
  std::string surface;
  std::string gold;  // entity id or kNil
  std::optional<std::string> mention_type;
  std::string language;  // inherited from the document
  // Audit sidecar for silver data: the original target of a mention that was
  // relabeled NIL.  Trainers and scorers must ignore it.
  std::optional<std::string> nil_original;

  bool is_nil() const { return gold == kNil; }
};

struct Dataset {
  std::map<std::string, Document> documents;
  std::vector<Mention> mentions;  // file order
  std::string split;

  const Document& document(const std::string& doc_id) const;
};

// Reads documents.jsonl + mentions.jsonl and validates every invariant:
// sentence lists non-empty, spans in range, surface equal to the spanned
// text.  Violations raise errors naming the offending document or mention.
Dataset load_dataset(const std::filesystem::path& documents_path,
                     const std::filesystem::path& mentions_path,
                     std::string split = "");

void save_dataset(const Dataset& dataset,
                  const std::filesystem::path& documents_path,
                  const std::filesystem::path& mentions_path);

// Uniform random subset of `target_size` mentions, documents pruned to those
// referenced.  Deterministic per seed.  Throws ValidationError when the
// target exceeds the dataset size.
Dataset downsample(const Dataset& dataset, size_t target_size, uint64_t seed);

}  // namespace plink::corpus

#endif  // PLINK_CORPUS_CORPUS_HPP_
