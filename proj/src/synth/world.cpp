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

#include "plink/synth/world.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "plink/core/io.hpp"
#include "plink/core/rng.hpp"
#include "plink/core/utf8.hpp"
#include "plink/encoder/represent.hpp"

namespace plink::synth {

using nlohmann::json;

namespace {

std::string zero_pad(size_t value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

// 4-code-point token: one stub subword, so each word is a single crisp
// vector rather than a split pair.
std::string vocab_token(size_t value) {
  static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s = "vxxx";
  for (int i = 3; i >= 1; --i) {
    s[static_cast<size_t>(i)] = digits[value % 36];
    value /= 36;
  }
  return s;
}

struct LatentEntity {
  std::string id;
  std::string name_token;                  // unique, language-transformed
  std::vector<std::string> alias_tokens;   // concepts only
  std::vector<std::string> desc_tokens;    // untransformed latent words
};

// "aa@tok" - the prefix selects the stub encoder's language transform.
std::string in_lang(const std::string& lang, const std::string& token) {
  return lang + "@" + token;
}

struct MentionSpec {
  std::string surface_token;  // language-transformed, without prefix
  std::string gold;
  std::vector<std::string> candidate_ids;
  std::vector<std::string> context_tokens;  // latent words around the surface
};

}  // namespace

SynthWorld make_world(const SynthConfig& config) {
  SynthWorld world;
  world.config = config;
  Rng rng(config.seed);

  // Latent entity space shared by both languages.  Names and aliases are
  // language-transformed surface material; descriptions are untransformed
  // latent words, identical strings in every language - the universal
  // context signal of this world.
  std::vector<LatentEntity> latents(config.n_entities);
  for (size_t e = 0; e < config.n_entities; ++e) {
    LatentEntity& le = latents[e];
    le.id = "e" + zero_pad(e, 5);
    le.name_token = "n" + zero_pad(e, 5);
    if (e < config.n_concepts)
      for (size_t a = 0; a < config.n_aliases; ++a)
        le.alias_tokens.push_back("a" + zero_pad(e, 5) + "x" +
                                  std::to_string(a));
    for (size_t w = 0; w < config.desc_words; ++w)
      le.desc_tokens.push_back(vocab_token(rng.below(config.vocab_words)));
  }

  // Sparse random cross-links give the popularity feature something to see.
  std::vector<std::vector<std::string>> outlinks(config.n_entities);
  for (size_t e = 0; e < config.n_entities; ++e) {
    const size_t n_links = rng.below(5);
    for (size_t k = 0; k < n_links; ++k)
      outlinks[e].push_back(latents[rng.below(config.n_entities)].id);
  }

  auto build_kb = [&](const std::string& lang) {
    kb::KnowledgeBase out(lang);
    for (size_t e = 0; e < config.n_entities; ++e) {
      kb::Entity entity;
      entity.id = latents[e].id;
      entity.language = lang;
      entity.name = in_lang(lang, latents[e].name_token);
      std::ostringstream desc;
      for (size_t w = 0; w < latents[e].desc_tokens.size(); ++w) {
        if (w) desc << ' ';
        desc << latents[e].desc_tokens[w] << ' ' << latents[e].desc_tokens[w];
      }
      entity.description = desc.str();
      entity.wiki_title = entity.name;
      entity.outlinks = outlinks[e];
      out.add_entity(std::move(entity));
    }
    return out;
  };
  world.kb_a = build_kb(config.lang_a);
  world.kb_b = build_kb(config.lang_b);

  // Mention specs are drawn once in latent space, then surfaced per split.
  auto draw_mentions = [&](size_t count, Rng& draw_rng) {
    std::vector<MentionSpec> specs(count);
    for (size_t m = 0; m < count; ++m) {
      MentionSpec& spec = specs[m];
      const size_t concept_index = draw_rng.below(config.n_concepts);
      const LatentEntity& gold = latents[concept_index];
      spec.gold = gold.id;
      const bool alias = draw_rng.uniform() < config.alias_prob;
      spec.surface_token =
          alias ? gold.alias_tokens[draw_rng.below(gold.alias_tokens.size())]
                : gold.name_token;
      // Context: description words of the gold entity plus noise, all
      // untransformed (descriptions read the same in both languages).
      spec.context_tokens = {
          gold.desc_tokens[draw_rng.below(gold.desc_tokens.size())],
          gold.desc_tokens[draw_rng.below(gold.desc_tokens.size())],
          gold.desc_tokens[draw_rng.below(gold.desc_tokens.size())],
          gold.desc_tokens[draw_rng.below(gold.desc_tokens.size())],
          vocab_token(draw_rng.below(config.vocab_words)),
          vocab_token(draw_rng.below(config.vocab_words))};
      spec.candidate_ids.push_back(gold.id);
      while (spec.candidate_ids.size() < config.n_candidates) {
        const std::string& id = latents[draw_rng.below(config.n_entities)].id;
        if (std::find(spec.candidate_ids.begin(), spec.candidate_ids.end(),
                      id) == spec.candidate_ids.end())
          spec.candidate_ids.push_back(id);
      }
      std::sort(spec.candidate_ids.begin(), spec.candidate_ids.end());
    }
    return specs;
  };

  auto surface = [&](const std::vector<MentionSpec>& specs,
                     const std::string& lang, const std::string& split_tag,
                     corpus::Dataset* dataset) {
    dataset->split = split_tag;
    for (size_t m = 0; m < specs.size(); ++m) {
      const MentionSpec& spec = specs[m];
      const std::string stem = lang + "-" + split_tag + zero_pad(m, 5);

      // The mention sentence holds the language-transformed SURFACE plus a
      // noise word; the surrounding sentences carry untagged description
      // words, so the pooled context is dominated by language-universal
      // material.  Leading position keeps the surface's subword parities
      // equal to a standalone encoding of the same token, so a name-surface
      // mention matches its entity name rep exactly within a language - an
      // easy but language-specific regularity.
      const std::string surface_word = in_lang(lang, spec.surface_token);
      const std::string sentence = surface_word + " " + spec.context_tokens[4];
      const size_t surface_start = 0;

      corpus::Document doc;
      doc.id = "d-" + stem;
      doc.language = lang;
      doc.sentences = {
          spec.context_tokens[0] + " " + spec.context_tokens[1],
          sentence,
          spec.context_tokens[2] + " " + spec.context_tokens[3] + " " +
              spec.context_tokens[5]};
      dataset->documents.emplace(doc.id, doc);

      corpus::Mention mention;
      mention.id = "m-" + stem;
      mention.doc_id = doc.id;
      mention.sentence_index = 1;
      mention.start = surface_start;
      mention.end = surface_start + utf8::length(surface_word);
      mention.surface = surface_word;
      mention.gold = spec.gold;
      mention.language = lang;
      dataset->mentions.push_back(mention);

      world.candidates[mention.id] = spec.candidate_ids;
    }
  };

  Rng train_rng = rng.fork(101);
  Rng eval_a_rng = rng.fork(102);
  Rng eval_b_rng = rng.fork(103);
  surface(draw_mentions(config.n_train_mentions, train_rng), config.lang_a,
          "train", &world.train_a);
  surface(draw_mentions(config.n_eval_a_mentions, eval_a_rng), config.lang_a,
          "eval", &world.eval_a);
  surface(draw_mentions(config.n_eval_mentions, eval_b_rng), config.lang_b,
          "eval", &world.eval_b);

  // Anchor statistics per language from that language's mention split, so
  // the prior-based triage path works on generated data too.
  for (const auto& m : world.train_a.mentions)
    world.kb_a.add_anchor(m.surface, m.gold);
  for (const auto& m : world.eval_b.mentions)
    world.kb_b.add_anchor(m.surface, m.gold);
  world.kb_a.finalize();
  world.kb_b.finalize();

  // The unlabeled pool: every entity name in both languages.  Names only,
  // no linking annotations.
  for (size_t e = 0; e < config.n_entities; ++e) {
    world.pool.texts[0].push_back(in_lang(config.lang_a, latents[e].name_token));
    world.pool.texts[1].push_back(in_lang(config.lang_b, latents[e].name_token));
  }

  encoder::StubEncoder::Config enc_config;
  enc_config.dim = config.dim;
  enc_config.seed = config.seed ^ 0x5131ULL;
  enc_config.subword_limit = config.encoder_subword_limit;
  enc_config.languages = {config.lang_a, config.lang_b};
  enc_config.transform_spread = config.transform_spread;
  enc_config.component_bias = config.component_bias;
  enc_config.transform_block = config.transform_block;
  world.enc = std::make_shared<encoder::StubEncoder>(enc_config);

  return world;
}

void write_world(const SynthWorld& world,
                 const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);

  auto write_kb = [&](const kb::KnowledgeBase& kb, const std::string& name) {
    std::ostringstream out;
    for (const auto& [id, entity] : kb.entities()) {
      json obj{{"id", entity.id},
               {"language", entity.language},
               {"name", entity.name},
               {"description", entity.description},
               {"wiki_title", entity.wiki_title ? json(*entity.wiki_title)
                                                : json(nullptr)},
               {"outlinks", entity.outlinks}};
      out << obj.dump() << '\n';
    }
    write_text_file(directory / name, out.str());
  };
  write_kb(world.kb_a, "kb_" + world.config.lang_a + ".jsonl");
  write_kb(world.kb_b, "kb_" + world.config.lang_b + ".jsonl");

  auto write_split = [&](const corpus::Dataset& ds, const std::string& stem) {
    corpus::save_dataset(ds, directory / (stem + ".docs.jsonl"),
                         directory / (stem + ".mentions.jsonl"));
  };
  write_split(world.train_a, "train_" + world.config.lang_a);
  write_split(world.eval_a, "eval_" + world.config.lang_a);
  write_split(world.eval_b, "eval_" + world.config.lang_b);

  // Anchored pages: each split's documents with its mentions as anchors.
  auto write_anchored = [&](const corpus::Dataset& ds, const std::string& name) {
    std::map<std::string, std::vector<const corpus::Mention*>> by_doc;
    for (const auto& m : ds.mentions) by_doc[m.doc_id].push_back(&m);
    std::ostringstream out;
    for (const auto& [doc_id, doc] : ds.documents) {
      json anchors = json::array();
      auto it = by_doc.find(doc_id);
      if (it != by_doc.end())
        for (const auto* m : it->second)
          anchors.push_back(json{{"sentence_index", m->sentence_index},
                                 {"start", m->start},
                                 {"end", m->end},
                                 {"target", m->gold}});
      json obj{{"id", doc.id},
               {"language", doc.language},
               {"sentences", doc.sentences},
               {"anchors", anchors}};
      out << obj.dump() << '\n';
    }
    write_text_file(directory / name, out.str());
  };
  write_anchored(world.train_a,
                 "anchored_" + world.config.lang_a + ".jsonl");
  write_anchored(world.eval_b, "anchored_" + world.config.lang_b + ".jsonl");

  std::ostringstream pool;
  for (int language = 0; language < 2; ++language) {
    const std::string& code =
        language == 0 ? world.config.lang_a : world.config.lang_b;
    for (const auto& text : world.pool.texts[language])
      pool << json{{"language", code}, {"text", text}}.dump() << '\n';
  }
  write_text_file(directory / "pool.jsonl", pool.str());

  std::ostringstream cands;
  for (const auto& [mention_id, ids] : world.candidates) {
    json list = json::array();
    for (const auto& id : ids)
      list.push_back(json{{"entity_id", id}, {"prior", 0.0}});
    cands << json{{"mention_id", mention_id}, {"candidates", list}}.dump()
          << '\n';
  }
  write_text_file(directory / "candidates.jsonl", cands.str());
}

encoder::RepresentationBundle RepStore::bundle(const std::string& mention_id,
                                               const std::string& entity_id) const {
  encoder::RepresentationBundle b;
  b.m_s = mention_string.at(mention_id);
  b.m_c = mention_context.at(mention_id);
  b.e_s = entity_name.at(entity_id);
  b.e_c = entity_context.at(entity_id);
  b.popularity = popularity.at(entity_id);
  return b;
}

RepStore build_rep_store(const SynthWorld& world,
                         const corpus::Dataset& dataset,
                         const kb::KnowledgeBase& kb) {
  RepStore store;
  const encoder::EncoderAdapter& enc = *world.enc;
  for (const auto& mention : dataset.mentions) {
    const corpus::Document& doc = dataset.document(mention.doc_id);
    store.mention_string[mention.id] = encoder::mention_string_rep(enc, doc, mention);
    store.mention_context[mention.id] =
        encoder::mention_context_rep(enc, doc, mention);
    for (const auto& id : world.candidates.at(mention.id)) {
      if (store.entity_name.count(id)) continue;
      const kb::Entity& entity = kb.entity(id);
      store.entity_name[id] = encoder::entity_name_rep(enc, entity);
      store.entity_context[id] = encoder::entity_context_rep(enc, entity);
      store.popularity[id] = static_cast<float>(kb.popularity_score(id));
    }
  }
  return store;
}

}  // namespace plink::synth
