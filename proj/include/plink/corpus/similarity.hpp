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

#ifndef PLINK_CORPUS_SIMILARITY_HPP_
#define PLINK_CORPUS_SIMILARITY_HPP_

#include <optional>
#include <string_view>

#include "plink/corpus/corpus.hpp"
#include "plink/kb/kb.hpp"

namespace plink::corpus {

// Jaro similarity over code points, in [0, 1].  Two empty strings are equal
// and score 1; one empty string scores 0.
double jaro(std::string_view a, std::string_view b);

// Standard Jaro-Winkler: jaro + L * 0.1 * (1 - jaro) where L is the common
// prefix length capped at 4.
double jaro_winkler(std::string_view a, std::string_view b);

struct DatasetStats {
  size_t n_mentions = 0;
  size_t n_non_nil = 0;
  // Absent when there is no non-NIL mention to measure.
  std::optional<double> exact_match_rate;   // surface == gold name, bytes
  std::optional<double> mean_jaro_winkler;  // surface vs gold name
};

// Mention-vs-gold-name difficulty statistics over the non-NIL mentions.
// Throws ValidationError listing any gold ids missing from the KB.
DatasetStats dataset_stats(const Dataset& dataset, const kb::KnowledgeBase& kb);

}  // namespace plink::corpus

#endif  // PLINK_CORPUS_SIMILARITY_HPP_
