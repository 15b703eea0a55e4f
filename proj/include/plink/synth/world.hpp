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

#ifndef PLINK_SYNTH_WORLD_HPP_
#define PLINK_SYNTH_WORLD_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "plink/adversarial/adversarial.hpp"
#include "plink/corpus/corpus.hpp"
#include "plink/encoder/stub_encoder.hpp"
#include "plink/kb/kb.hpp"

// A synthetic two-language world for transfer experiments: a shared latent
// entity space surfaced in two "languages" through the stub encoder's
// orthogonal language transforms.  Mentions refer to a subset of shared
// concepts by the entity's name token or one of its aliases, embedded in a
// short context sentence; candidate sets pair the gold entity with sampled
// distractors.  Everything is deterministic per seed.

namespace plink::synth {

struct SynthConfig {
  size_t dim = 32;
  size_t n_entities = 2000;
  size_t n_concepts = 200;   // linkable entities; the rest are distractors
  size_t n_train_mentions = 1000;  // language A
  size_t n_eval_mentions = 1000;   // language B
  size_t n_eval_a_mentions = 200;  // held-out language A diagnostics
  size_t n_candidates = 10;        // gold + distractors per mention
  std::string lang_a = "aa";
  std::string lang_b = "bb";
  uint64_t seed = 1;
  // Strength of the rotation separating the two languages; passed to the
  // stub encoder's transform generator.  Zero or less draws fully random
  // orthogonal transforms.
  double transform_spread = 0.0;
  // Cone concentration of the stub's language-tagged vectors; makes the two
  // language populations separable the way distinct scripts are.
  double component_bias = 0.8;
  // Components rotated by the language transforms (0 = all of them); a
  // partial block leaves universal directions shared across the languages.
  size_t transform_block = 0;
  size_t n_aliases = 2;
  double alias_prob = 0.4;  // mention surfaces an alias instead of the name
  size_t desc_words = 5;
  size_t vocab_words = 1200;
  size_t encoder_subword_limit = 64;
};

struct SynthWorld {
  SynthConfig config;
  kb::KnowledgeBase kb_a, kb_b;
  corpus::Dataset train_a, eval_a, eval_b;
  adversarial::UnlabeledPool pool;  // entity names, both languages
  // mention id -> candidate entity ids (gold always included)
  std::map<std::string, std::vector<std::string>> candidates;
  std::shared_ptr<encoder::StubEncoder> enc;
};

SynthWorld make_world(const SynthConfig& config);

// Writes the world as toolkit input files under `directory`: per-language
// entity files, anchored pages, datasets, and the unlabeled pool, so the
// whole CLI pipeline can run on generated data.
void write_world(const SynthWorld& world,
                 const std::filesystem::path& directory);

// Precomputed mention/entity representations for fast training loops.
struct RepStore {
  std::map<std::string, std::vector<float>> mention_string, mention_context;
  std::map<std::string, std::vector<float>> entity_name, entity_context;
  std::map<std::string, float> popularity;

  encoder::RepresentationBundle bundle(const std::string& mention_id,
                                       const std::string& entity_id) const;
};

RepStore build_rep_store(const SynthWorld& world,
                         const corpus::Dataset& dataset,
                         const kb::KnowledgeBase& kb);

}  // namespace plink::synth

#endif  // PLINK_SYNTH_WORLD_HPP_
