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

#include "plink/corpus/similarity.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "plink/core/error.hpp"
#include "plink/core/utf8.hpp"

namespace plink::corpus {

double jaro(std::string_view a, std::string_view b) {
  const auto sa = utf8::decode(a);
  const auto sb = utf8::decode(b);
  if (sa.empty() && sb.empty()) return 1.0;
  if (sa.empty() || sb.empty()) return 0.0;

  const size_t window =
      std::max(sa.size(), sb.size()) / 2 == 0
          ? 0
          : std::max(sa.size(), sb.size()) / 2 - 1;

  std::vector<bool> matched_a(sa.size(), false), matched_b(sb.size(), false);
  size_t matches = 0;
  for (size_t i = 0; i < sa.size(); ++i) {
    const size_t lo = i > window ? i - window : 0;
    const size_t hi = std::min(i + window + 1, sb.size());
    for (size_t j = lo; j < hi; ++j) {
      if (matched_b[j] || sa[i] != sb[j]) continue;
      matched_a[i] = true;
      matched_b[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  // Half-transpositions: matched characters out of order.
  size_t transpositions = 0;
  size_t j = 0;
  for (size_t i = 0; i < sa.size(); ++i) {
    if (!matched_a[i]) continue;
    while (!matched_b[j]) ++j;
    if (sa[i] != sb[j]) ++transpositions;
    ++j;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(transpositions) / 2.0;
  return (m / static_cast<double>(sa.size()) +
          m / static_cast<double>(sb.size()) + (m - t) / m) /
         3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  const auto sa = utf8::decode(a);
  const auto sb = utf8::decode(b);
  size_t prefix = 0;
  const size_t max_prefix = std::min<size_t>({4, sa.size(), sb.size()});
  while (prefix < max_prefix && sa[prefix] == sb[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

DatasetStats dataset_stats(const Dataset& dataset,
                           const kb::KnowledgeBase& kb) {
  DatasetStats stats;
  stats.n_mentions = dataset.mentions.size();

  std::vector<std::string> unresolved;
  size_t exact = 0;
  double jw_sum = 0.0;
  for (const Mention& m : dataset.mentions) {
    if (m.is_nil()) continue;
    if (!kb.contains(m.gold)) {
      unresolved.push_back(m.gold);
      continue;
    }
    ++stats.n_non_nil;
    const std::string& name = kb.entity(m.gold).name;
    if (m.surface == name) ++exact;
    jw_sum += jaro_winkler(m.surface, name);
  }
  if (!unresolved.empty()) {
    std::sort(unresolved.begin(), unresolved.end());
    unresolved.erase(std::unique(unresolved.begin(), unresolved.end()),
                     unresolved.end());
    std::ostringstream msg;
    msg << "gold ids not in KB:";
    for (const auto& id : unresolved) msg << ' ' << id;
    throw ValidationError(msg.str());
  }
  if (stats.n_non_nil > 0) {
    stats.exact_match_rate =
        static_cast<double>(exact) / static_cast<double>(stats.n_non_nil);
    stats.mean_jaro_winkler = jw_sum / static_cast<double>(stats.n_non_nil);
  }
  return stats;
}

}  // namespace plink::corpus
