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

#include <doctest.h>

#include <map>
#include <set>

#include "plink/core/rng.hpp"
#include "plink/kb/name_index.hpp"
#include "plink/triage/triage.hpp"

using namespace plink;

namespace {

kb::KnowledgeBase anchored_kb(
    const std::map<std::string, std::map<std::string, uint64_t>>& anchors,
    size_t n_entities = 12) {
  kb::KnowledgeBase out("xx");
  for (size_t i = 0; i < n_entities; ++i) {
    kb::Entity e;
    e.id = "e" + std::to_string(i);
    e.language = "xx";
    e.name = "name" + std::to_string(i) + " shared";
    e.wiki_title = "title" + std::to_string(i);
    out.add_entity(std::move(e));
  }
  for (const auto& [surface, counts] : anchors)
    for (const auto& [id, count] : counts) out.add_anchor(surface, id, count);
  out.finalize();
  return out;
}

}  // namespace

TEST_CASE("estimate_prior normalizes anchor counts") {
  const auto kb = anchored_kb({{"Senado", {{"e1", 8}, {"e2", 2}}},
                               {"Unica", {{"e3", 5}}}});
  const auto priors = triage::estimate_prior(kb, "Senado");
  REQUIRE(priors.size() == 2);
  CHECK(priors[0].entity_id == "e1");
  CHECK(priors[0].prior == doctest::Approx(0.8));
  CHECK(priors[1].entity_id == "e2");
  CHECK(priors[1].prior == doctest::Approx(0.2));

  const auto single = triage::estimate_prior(kb, "Unica");
  REQUIRE(single.size() == 1);
  CHECK(single[0].prior == doctest::Approx(1.0));

  CHECK(triage::estimate_prior(kb, "unseen").empty());
}

TEST_CASE("priors form a distribution and match brute-force normalization") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    std::map<std::string, std::map<std::string, uint64_t>> anchors;
    std::map<std::string, uint64_t> counts;
    uint64_t total = 0;
    const size_t n = 1 + rng.below(8);
    for (size_t i = 0; i < n; ++i) {
      const uint64_t c = 1 + rng.below(50);
      counts["e" + std::to_string(rng.below(12))] += c;
    }
    for (const auto& [id, c] : counts) total += c;
    anchors["s"] = counts;
    const auto kb = anchored_kb(anchors);

    const auto priors = triage::estimate_prior(kb, "s");
    double sum = 0.0;
    for (const auto& c : priors) sum += c.prior;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    // Top-1 equals the argmax of the underlying counts (ties by id).
    uint64_t best_count = 0;
    std::string best_id;
    for (const auto& [id, c] : counts) {
      if (c > best_count || (c == best_count && (best_id.empty() || id < best_id))) {
        best_count = c;
        best_id = id;
      }
    }
    CHECK(priors[0].entity_id == best_id);
    for (const auto& c : priors) {
      const double expected = static_cast<double>(counts.at(c.entity_id)) /
                              static_cast<double>(total);
      CHECK(c.prior == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("generate_candidates truncates priors and falls back to the index") {
  std::map<std::string, std::map<std::string, uint64_t>> anchors;
  for (size_t i = 0; i < 12; ++i)
    anchors["busy"]["e" + std::to_string(i)] = 12 - i;
  const auto kb = anchored_kb(anchors);
  const auto index = kb::NameIndex::build(kb);

  triage::TriageConfig config;
  config.k = 10;
  config.l = 20;

  const auto top = triage::generate_candidates(kb, index, "busy", config);
  CHECK(top.size() == 10);  // 12 entries truncated to k

  // Unseen surface: index fallback with uniform priors.
  const auto fallback = triage::generate_candidates(kb, index, "name3", config);
  REQUIRE(fallback.size() == 1);
  CHECK(fallback[0].entity_id == "e3");
  CHECK(fallback[0].prior == doctest::Approx(1.0));

  const auto fb2 = triage::generate_candidates(kb, index, "name1 name2", config);
  REQUIRE(fb2.size() == 2);
  CHECK(fb2[0].prior == doctest::Approx(0.5));

  CHECK(triage::generate_candidates(kb, index, "qqqq", config).empty());
}

TEST_CASE("proportional allocation follows round-half-up then trim") {
  CHECK(triage::allocate_proportional({0.8, 0.2}, 10) ==
        std::vector<size_t>{8, 2});
  CHECK(triage::allocate_proportional({0.5, 0.5}, 5) ==
        std::vector<size_t>{3, 2});
  // Every title keeps at least one slot.
  CHECK(triage::allocate_proportional({0.97, 0.01, 0.01, 0.01}, 10) ==
        std::vector<size_t>{7, 1, 1, 1});
}

TEST_CASE("two_stage_retrieve dedupes, caps at l, and keeps priors bounded") {
  std::map<std::string, std::map<std::string, uint64_t>> anchors;
  anchors["query"] = {{"e1", 8}, {"e2", 2}};
  const auto kb = anchored_kb(anchors);
  const auto index = kb::NameIndex::build(kb);

  triage::TriageConfig config;
  config.k = 5;
  config.l = 10;

  const auto result = triage::two_stage_retrieve(kb, index, "query", config);
  CHECK(result.size() <= config.l);
  CHECK_FALSE(result.empty());

  std::set<std::string> ids;
  double sum = 0.0;
  for (const auto& c : result) {
    CHECK(ids.insert(c.entity_id).second);  // no duplicates
    CHECK(c.prior >= 0.0);
    sum += c.prior;
  }
  CHECK(sum <= 1.0 + 1e-9);

  // Deterministic.
  const auto again = triage::two_stage_retrieve(kb, index, "query", config);
  REQUIRE(again.size() == result.size());
  for (size_t i = 0; i < result.size(); ++i) {
    CHECK(again[i].entity_id == result[i].entity_id);
    CHECK(again[i].prior == result[i].prior);
  }
}

TEST_CASE("two_stage_retrieve surface fallback when nothing is known") {
  const auto kb = anchored_kb({});
  const auto index = kb::NameIndex::build(kb);
  triage::TriageConfig config;
  config.k = 3;
  config.l = 8;

  // No anchors and no index hits at all.
  CHECK(triage::two_stage_retrieve(kb, index, "zzzz", config).empty());

  // No anchors but the surface matches names: candidates appear, capped at l.
  const auto via_index = triage::two_stage_retrieve(kb, index, "shared", config);
  CHECK_FALSE(via_index.empty());
  CHECK(via_index.size() <= config.l);
}
