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

#include "plink/cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plink/adversarial/adversarial.hpp"
#include "plink/core/error.hpp"
#include "plink/core/io.hpp"
#include "plink/core/rng.hpp"
#include "plink/corpus/corpus.hpp"
#include "plink/corpus/silver.hpp"
#include "plink/corpus/similarity.hpp"
#include "plink/encoder/represent.hpp"
#include "plink/encoder/stub_encoder.hpp"
#include "plink/eval/evaluate.hpp"
#include "plink/kb/kb.hpp"
#include "plink/kb/name_index.hpp"
#include "plink/ranker/checkpoint.hpp"
#include "plink/ranker/trainer.hpp"
#include "plink/triage/triage.hpp"

namespace plink::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------- options

struct Options {
  std::string config_path;
  std::optional<uint64_t> seed;
  std::string kb_path;
  std::string anchors_path;   // anchored_docs.jsonl for anchor statistics
  std::string dataset_path;   // prefix or directory
  std::string pool_path;
  std::string out_path;
  std::string candidates_path;
  std::string checkpoint_path;
  std::string baseline;  // "nn" to predict with the cosine baseline
  std::string gold_path;
  std::string pred_path;
  std::string anchored_path;  // build-dataset input pages
  std::string seeds_path;
  std::string preset;
  std::string cache_dir;
  std::optional<double> threshold;
  std::optional<double> lambda;
  std::optional<size_t> adv_stop;
  std::optional<size_t> el_epochs;
  std::optional<size_t> k;
  std::optional<size_t> l;
  std::optional<size_t> negatives;
  std::optional<size_t> epochs;
  std::optional<size_t> downsample;
  double nil_fraction = 0.2;
};

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  json config;
  try {
    config = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw ParseError("config file " + path + ": " + e.what());
  }
  if (!config.is_object())
    throw ValidationError("config file " + path + " must hold a JSON object");
  return config;
}

// File values first, then command-line overrides.
json effective_config(const Options& opt) {
  json config = load_config_file(opt.config_path);
  if (!config.contains("ranker")) config["ranker"] = json::object();
  if (!config.contains("triage")) config["triage"] = json::object();
  if (!config.contains("encoder")) config["encoder"] = json::object();

  if (opt.seed) config["seed"] = *opt.seed;
  if (!config.contains("seed")) config["seed"] = 1;
  if (opt.threshold) config["threshold"] = *opt.threshold;
  if (!config.contains("threshold")) config["threshold"] = -1.0;
  if (opt.negatives) config["ranker"]["n_negatives"] = *opt.negatives;
  if (opt.epochs) config["ranker"]["epochs"] = *opt.epochs;
  if (opt.k) config["triage"]["k"] = *opt.k;
  if (opt.l) config["triage"]["l"] = *opt.l;

  if (!opt.preset.empty()) {
    json adv = config.value("adversarial", json::object());
    adv["preset"] = opt.preset;
    config["adversarial"] = adv;
  }
  if (opt.lambda || opt.adv_stop || opt.el_epochs) {
    json adv = config.value("adversarial", json::object());
    if (opt.lambda) adv["lambda"] = *opt.lambda;
    if (opt.adv_stop) adv["adv_stop_epoch"] = *opt.adv_stop;
    if (opt.el_epochs) adv["el_only_epochs"] = *opt.el_epochs;
    config["adversarial"] = adv;
  }

  if (!opt.cache_dir.empty()) config["cache_dir"] = opt.cache_dir;
  if (const char* env = std::getenv("PLINK_CACHE_DIR"); env && *env)
    config["cache_dir"] = env;  // the environment wins
  return config;
}

uint64_t config_seed(const json& config) { return config.at("seed").get<uint64_t>(); }

ranker::RankerConfig ranker_config(const json& config) {
  return ranker::RankerConfig::from_json(config.at("ranker"));
}

triage::TriageConfig triage_config(const json& config) {
  triage::TriageConfig tc;
  const json& t = config.at("triage");
  tc.k = t.value("k", tc.k);
  tc.l = t.value("l", tc.l);
  tc.validate();
  return tc;
}

adversarial::AdversarialConfig adversarial_config(const json& config) {
  if (!config.contains("adversarial"))
    throw ValidationError(
        "train-adv needs an \"adversarial\" config section or a --preset");
  const json& a = config.at("adversarial");
  std::vector<std::string> languages =
      a.value("languages", std::vector<std::string>{});
  if (languages.size() != 2)
    throw ValidationError(
        "adversarial.languages must list exactly [source, target]");

  adversarial::AdversarialConfig cfg;
  const std::string preset = a.value("preset", std::string());
  if (preset == "tac-adv")
    cfg = adversarial::tac_adv_preset(languages[0], languages[1]);
  else if (preset == "wiki-adv")
    cfg = adversarial::wiki_adv_preset(languages[0], languages[1]);
  else if (!preset.empty())
    throw ValidationError("unknown adversarial preset: " + preset);
  else
    cfg.languages = languages;

  if (a.contains("lambda")) cfg.lambda = a["lambda"].get<double>();
  if (a.contains("y")) cfg.y = a["y"].get<size_t>();
  if (a.contains("adv_stop_epoch") && !a["adv_stop_epoch"].is_null())
    cfg.adv_stop_epoch = a["adv_stop_epoch"].get<size_t>();
  if (a.contains("el_only_epochs"))
    cfg.el_only_epochs = a["el_only_epochs"].get<size_t>();
  if (a.contains("classifier_hidden"))
    cfg.classifier_hidden = a["classifier_hidden"].get<size_t>();
  if (a.contains("adv_text_kind"))
    cfg.adv_text_kind = a["adv_text_kind"].get<std::string>() == "description"
                            ? adversarial::AdvTextKind::kDescription
                            : adversarial::AdvTextKind::kName;
  if (a.contains("classic_assignment"))
    cfg.classic_assignment = a["classic_assignment"].get<bool>();
  cfg.validate();
  return cfg;
}

std::unique_ptr<encoder::StubEncoder> make_encoder(const json& config) {
  const json& e = config.at("encoder");
  const std::string kind = e.value("kind", std::string("stub"));
  if (kind != "stub")
    throw ValidationError(
        "unknown encoder kind \"" + kind +
        "\"; link a custom EncoderAdapter for pretrained models");
  encoder::StubEncoder::Config sc;
  sc.dim = e.value("dim", size_t{64});
  sc.seed = e.value("seed", uint64_t{1});
  sc.subword_limit = e.value("subword_limit", size_t{512});
  sc.languages = e.value("languages", std::vector<std::string>{});
  sc.transform_spread = e.value("transform_spread", 0.0);
  sc.component_bias = e.value("component_bias", 0.0);
  sc.transform_block = e.value("transform_block", size_t{0});
  return std::make_unique<encoder::StubEncoder>(sc);
}

// ------------------------------------------------------------- data access

struct DatasetPaths {
  fs::path documents, mentions;
};

DatasetPaths resolve_dataset(const std::string& path) {
  if (path.empty()) throw ValidationError("missing --dataset");
  const fs::path p(path);
  const DatasetPaths prefixed{fs::path(path + ".docs.jsonl"),
                              fs::path(path + ".mentions.jsonl")};
  if (fs::exists(prefixed.documents)) return prefixed;
  const DatasetPaths dir{p / "documents.jsonl", p / "mentions.jsonl"};
  if (fs::exists(dir.documents)) return dir;
  throw NotFoundError("no dataset at prefix or directory: " + path);
}

corpus::Dataset load_dataset_arg(const std::string& path) {
  const auto paths = resolve_dataset(path);
  return corpus::load_dataset(paths.documents, paths.mentions);
}

kb::KnowledgeBase load_kb_arg(const Options& opt) {
  if (opt.kb_path.empty()) throw ValidationError("missing --kb");
  kb::LoadStats stats;
  auto kb = kb::load_kb(opt.kb_path, &stats);
  if (stats.dangling_links_dropped > 0)
    std::cerr << "warning: dropped " << stats.dangling_links_dropped
              << " dangling outlinks\n";
  if (!opt.anchors_path.empty()) {
    const auto anchored = corpus::load_anchored_docs(opt.anchors_path);
    const size_t skipped = corpus::accumulate_anchors(anchored, kb);
    if (skipped > 0)
      std::cerr << "warning: skipped " << skipped
                << " anchors with unknown targets\n";
    kb.finalize(kb.popularity_mode());
  }
  return kb;
}

using CandidateMap = std::map<std::string, std::vector<triage::Candidate>>;

CandidateMap load_candidates_file(const fs::path& path) {
  CandidateMap out;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    try {
      const json obj = json::parse(line);
      auto& list = out[obj.at("mention_id").get<std::string>()];
      for (const auto& c : obj.at("candidates")) {
        list.push_back({c.at("entity_id").get<std::string>(),
                        c.value("prior", 0.0)});
      }
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad candidates line: " + e.what());
    }
  });
  return out;
}

void save_candidates_file(const CandidateMap& candidates, const fs::path& path) {
  std::ostringstream out;
  for (const auto& [mention_id, list] : candidates) {
    json array = json::array();
    for (const auto& c : list)
      array.push_back(json{{"entity_id", c.entity_id}, {"prior", c.prior}});
    out << json{{"mention_id", mention_id}, {"candidates", array}}.dump()
        << '\n';
  }
  write_text_file(path, out.str());
}

// Candidates from the file when given, else two-stage retrieval per mention.
CandidateMap gather_candidates(const Options& opt, const kb::KnowledgeBase& kb,
                               const corpus::Dataset& dataset,
                               const triage::TriageConfig& tc) {
  if (!opt.candidates_path.empty())
    return load_candidates_file(opt.candidates_path);
  const auto index = kb::NameIndex::build(kb);
  CandidateMap out;
  for (const auto& mention : dataset.mentions)
    out[mention.id] = triage::two_stage_retrieve(kb, index, mention.surface, tc);
  return out;
}

void write_manifest(const fs::path& out_dir, const std::string& stage,
                    const json& config) {
  json manifest;
  manifest["stage"] = stage;
  manifest["seed"] = config.at("seed");
  manifest["config"] = config;
  manifest["config_hash"] = fnv1a64_hex(config.dump());
  manifest["versions"] = json{{"plink", kToolVersion},
                              {"checkpoint_format", 1},
                              {"index_format", 1}};
  // run_manifest.json, not manifest.json: checkpoint directories already
  // keep a manifest.json describing the tensor layout.
  write_text_file(out_dir / "run_manifest.json", manifest.dump(2) + "\n");
}

fs::path require_out(const Options& opt) {
  if (opt.out_path.empty()) throw ValidationError("missing --out");
  fs::path dir(opt.out_path);
  fs::create_directories(dir);
  return dir;
}

std::unique_ptr<encoder::RepCache> make_cache(const json& config) {
  if (config.contains("cache_dir"))
    return std::make_unique<encoder::RepCache>(
        fs::path(config["cache_dir"].get<std::string>()));
  return std::make_unique<encoder::RepCache>();
}

// --------------------------------------------------------------- stages

int stage_build_kb(const Options& opt, const json& config) {
  const auto out_dir = require_out(opt);
  kb::LoadStats stats;
  auto kb = kb::load_kb(opt.kb_path, &stats);
  size_t anchors_skipped = 0;
  if (!opt.anchors_path.empty()) {
    const auto anchored = corpus::load_anchored_docs(opt.anchors_path);
    anchors_skipped = corpus::accumulate_anchors(anchored, kb);
    kb.finalize(kb.popularity_mode());
  }
  const auto index = kb::NameIndex::build(kb);
  index.save(out_dir / "name_index.plidx");

  json report{{"entities", kb.size()},
              {"median_outlinks", kb.median_outlinks()},
              {"dangling_links_dropped", stats.dangling_links_dropped},
              {"anchors_skipped", anchors_skipped},
              {"anchor_surfaces", kb.anchor_stats().size()},
              {"index_tokens", index.token_count()}};
  write_text_file(out_dir / "kb_stats.json", report.dump(2) + "\n");
  write_manifest(out_dir, "build-kb", config);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int stage_build_dataset(const Options& opt, const json& config) {
  const auto out_dir = require_out(opt);
  if (opt.anchored_path.empty()) throw ValidationError("missing --anchored");
  if (opt.seeds_path.empty()) throw ValidationError("missing --seeds");
  const auto kb = load_kb_arg(opt);
  const auto anchored = corpus::load_anchored_docs(opt.anchored_path);

  std::vector<std::string> seeds;
  for_each_line(opt.seeds_path, [&](size_t, std::string_view line) {
    seeds.emplace_back(line);
  });

  corpus::SilverStats stats;
  const auto dataset = corpus::build_silver_dataset(
      anchored, kb, seeds, opt.nil_fraction, config_seed(config), &stats);
  corpus::save_dataset(dataset, out_dir / "documents.jsonl",
                       out_dir / "mentions.jsonl");
  json report{{"mentions", dataset.mentions.size()},
              {"documents", dataset.documents.size()},
              {"nil_relabeled", stats.nil_relabeled},
              {"seeds_skipped", stats.seeds_skipped},
              {"anchors_dropped", stats.anchors_dropped}};
  write_text_file(out_dir / "dataset_stats.json", report.dump(2) + "\n");
  write_manifest(out_dir, "build-dataset", config);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int stage_triage(const Options& opt, const json& config) {
  const auto out_dir = require_out(opt);
  const auto kb = load_kb_arg(opt);
  const auto dataset = load_dataset_arg(opt.dataset_path);
  const auto tc = triage_config(config);
  const auto index = kb::NameIndex::build(kb);

  CandidateMap candidates;
  size_t gold_hits = 0, gold_total = 0;
  for (const auto& mention : dataset.mentions) {
    auto list = triage::two_stage_retrieve(kb, index, mention.surface, tc);
    if (!mention.is_nil()) {
      ++gold_total;
      for (const auto& c : list)
        if (c.entity_id == mention.gold) {
          ++gold_hits;
          break;
        }
    }
    candidates.emplace(mention.id, std::move(list));
  }
  save_candidates_file(candidates, out_dir / "candidates.jsonl");
  json report{{"mentions", dataset.mentions.size()},
              {"triage_recall", gold_total ? static_cast<double>(gold_hits) /
                                                 static_cast<double>(gold_total)
                                           : 0.0}};
  write_text_file(out_dir / "triage_stats.json", report.dump(2) + "\n");
  write_manifest(out_dir, "triage", config);
  std::cout << report.dump(2) << '\n';
  return 0;
}

// Training examples for one epoch: negatives redrawn from the candidate
// sets, bundles served through the cache.
std::vector<ranker::TrainExample<float>> build_examples(
    const kb::KnowledgeBase& kb, const corpus::Dataset& dataset,
    const CandidateMap& candidates, const encoder::EncoderAdapter& enc,
    encoder::RepCache* cache, size_t n_negatives,
    const std::vector<std::string>& languages, Rng& rng, size_t* skipped) {
  std::vector<ranker::TrainExample<float>> examples;
  for (const auto& mention : dataset.mentions) {
    if (mention.is_nil() || !kb.contains(mention.gold)) {
      if (skipped) ++*skipped;
      continue;
    }
    int label = 0;
    if (languages.size() == 2) {
      if (mention.language == languages[0])
        label = 0;
      else if (mention.language == languages[1])
        label = 1;
      else
        throw ValidationError("mention " + mention.id + " language \"" +
                              mention.language +
                              "\" is not in the configured pair");
    }
    std::vector<std::string> candidate_ids;
    if (auto it = candidates.find(mention.id); it != candidates.end())
      for (const auto& c : it->second) candidate_ids.push_back(c.entity_id);
    const auto negatives = ranker::sample_negatives(
        candidate_ids, mention.gold, n_negatives, kb, rng);

    const corpus::Document& doc = dataset.document(mention.doc_id);
    ranker::TrainExample<float> example;
    example.mention_id = mention.id;
    example.label = label;
    example.pos =
        encoder::build_bundle(enc, kb, doc, mention, mention.gold, cache);
    for (const auto& neg : negatives)
      example.negs.push_back(
          encoder::build_bundle(enc, kb, doc, mention, neg, cache));
    examples.push_back(std::move(example));
  }
  return examples;
}

int stage_train(const Options& opt, const json& config, bool adversarial_mode) {
  const auto out_dir = require_out(opt);
  const auto kb = load_kb_arg(opt);
  auto dataset = load_dataset_arg(opt.dataset_path);
  const uint64_t seed = config_seed(config);
  if (opt.downsample) dataset = corpus::downsample(dataset, *opt.downsample, seed);

  ranker::RankerConfig rc = ranker_config(config);
  rc.rng_seed = seed;

  adversarial::AdversarialConfig ac;
  adversarial::UnlabeledPool pool;
  if (adversarial_mode) {
    ac = adversarial_config(config);
    if (opt.pool_path.empty()) throw ValidationError("missing --pool");
    pool = adversarial::load_pool(opt.pool_path, ac.languages);
    pool.require_populated();
    rc.invariant_layer = true;
    rc.adv_hidden = ac.classifier_hidden;
  }

  const auto enc = make_encoder(config);
  if (enc->dim() != rc.dim)
    throw ValidationError("encoder dim " + std::to_string(enc->dim()) +
                          " does not match ranker dim " +
                          std::to_string(rc.dim));
  auto cache = make_cache(config);
  const auto candidates = gather_candidates(opt, kb, dataset, triage_config(config));

  auto model = ranker::init_model<float>(rc, seed);
  Rng rng(seed ^ 0x7261696eULL);
  size_t skipped = 0;

  adversarial::ExampleProvider<float> provider =
      [&](size_t, Rng& r) {
        return build_examples(kb, dataset, candidates, *enc, cache.get(),
                              rc.n_negatives,
                              adversarial_mode ? ac.languages
                                               : std::vector<std::string>{},
                              r, &skipped);
      };

  adversarial::History history;
  if (adversarial_mode) {
    adversarial::PoolEncodeFn<float> encode_item =
        [&](int language, size_t item) {
          return adversarial::encode_pool_text(*enc,
                                               pool.texts[language][item]);
        };
    history = adversarial::train_with_adversary(model, ac, provider, pool,
                                                encode_item, rng);
  } else {
    for (size_t epoch = 1; epoch <= rc.epochs; ++epoch) {
      const auto examples = provider(epoch, rng);
      if (examples.empty())
        throw ValidationError("no trainable mentions in the dataset");
      adversarial::EpochRecord record;
      record.epoch = epoch;
      record.el_loss = ranker::train_epoch<float>(model, examples, rng);
      history.push_back(record);
    }
  }

  ranker::save_checkpoint(model, out_dir);
  adversarial::save_history(history, out_dir / "history.jsonl");
  cache->flush();
  write_manifest(out_dir, adversarial_mode ? "train-adv" : "train", config);
  if (skipped > 0)
    std::cerr << "note: skipped " << skipped
              << " mention instances (NIL gold or gold not in KB)\n";
  std::cout << "trained " << history.size() << " epochs; final el_loss "
            << (history.empty() ? 0.0 : history.back().el_loss) << '\n';
  return 0;
}

int stage_predict(const Options& opt, const json& config) {
  const auto out_dir = require_out(opt);
  const auto kb = load_kb_arg(opt);
  const auto dataset = load_dataset_arg(opt.dataset_path);
  const double threshold = config.at("threshold").get<double>();
  const auto enc = make_encoder(config);
  auto cache = make_cache(config);
  const auto candidates = gather_candidates(opt, kb, dataset, triage_config(config));

  std::optional<ranker::RankerModel<float>> model;
  if (opt.baseline.empty()) {
    if (opt.checkpoint_path.empty())
      throw ValidationError("predict needs --checkpoint or --baseline nn");
    model = ranker::load_checkpoint(opt.checkpoint_path);
    if (model->config.dim != enc->dim())
      throw ValidationError("checkpoint dim does not match encoder dim");
  } else if (opt.baseline != "nn") {
    throw ValidationError("unknown baseline: " + opt.baseline);
  }

  std::vector<eval::Prediction> predictions;
  predictions.reserve(dataset.mentions.size());
  for (const auto& mention : dataset.mentions) {
    const corpus::Document& doc = dataset.document(mention.doc_id);
    static const std::vector<triage::Candidate> kEmpty;
    const auto it = candidates.find(mention.id);
    const auto& list = it == candidates.end() ? kEmpty : it->second;
    auto score = [&](const std::string& entity_id) {
      const auto bundle =
          encoder::build_bundle(*enc, kb, doc, mention, entity_id, cache.get());
      return model ? static_cast<double>(ranker::forward_score(*model, bundle))
                   : ranker::nn_baseline_score(bundle);
    };
    predictions.push_back(
        eval::predict_with_nil(mention.id, list, score, threshold));
  }
  eval::save_predictions(predictions, out_dir / "predictions.jsonl");
  cache->flush();
  write_manifest(out_dir, "predict", config);
  std::cout << "wrote " << predictions.size() << " predictions\n";
  return 0;
}

// Gold mentions for scoring only: no document context needed, so span and
// surface checks are skipped.
std::vector<corpus::Mention> load_gold_mentions(const fs::path& path) {
  std::vector<corpus::Mention> out;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    try {
      const json obj = json::parse(line);
      corpus::Mention m;
      m.id = obj.at("id").get<std::string>();
      m.gold = obj.at("gold").get<std::string>();
      if (obj.contains("mention_type") && !obj["mention_type"].is_null())
        m.mention_type = obj["mention_type"].get<std::string>();
      out.push_back(std::move(m));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad gold mention line: " + e.what());
    }
  });
  return out;
}

int stage_evaluate(const Options& opt, const json& config) {
  if (opt.gold_path.empty()) throw ValidationError("missing --gold");
  if (opt.pred_path.empty()) throw ValidationError("missing --pred");
  const auto gold = load_gold_mentions(opt.gold_path);
  const auto predictions = eval::load_predictions(opt.pred_path);
  const auto report = eval::evaluate(gold, predictions);

  std::cout << eval::report_to_table(report);
  if (!opt.out_path.empty()) {
    const auto out_dir = require_out(opt);
    write_text_file(out_dir / "report.json", eval::report_to_json(report));
    write_text_file(out_dir / "report.txt", eval::report_to_table(report));
    write_manifest(out_dir, "evaluate", config);
  }
  return 0;
}

int stage_stats(const Options& opt, const json& config) {
  const auto kb = load_kb_arg(opt);
  const auto dataset = load_dataset_arg(opt.dataset_path);
  const auto stats = corpus::dataset_stats(dataset, kb);
  json report{{"n_mentions", stats.n_mentions}, {"n_non_nil", stats.n_non_nil}};
  report["exact_match_rate"] =
      stats.exact_match_rate ? json(*stats.exact_match_rate) : json(nullptr);
  report["mean_jaro_winkler"] =
      stats.mean_jaro_winkler ? json(*stats.mean_jaro_winkler) : json(nullptr);
  std::cout << report.dump(2) << '\n';
  if (!opt.out_path.empty()) {
    const auto out_dir = require_out(opt);
    write_text_file(out_dir / "stats.json", report.dump(2) + "\n");
    write_manifest(out_dir, "stats", config);
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"plink: multilingual entity linking pipeline"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--seed", opt.seed, "RNG seed (overrides config)");
    cmd->add_option("--out", opt.out_path, "output directory");
    cmd->add_option("--cache", opt.cache_dir,
                    "representation cache directory (PLINK_CACHE_DIR wins)");
  };

  auto* build_kb = app.add_subcommand("build-kb", "index a knowledge base");
  add_common(build_kb);
  build_kb->add_option("--kb", opt.kb_path, "entity JSONL")->required();
  build_kb->add_option("--anchors", opt.anchors_path, "anchored pages JSONL");

  auto* build_dataset =
      app.add_subcommand("build-dataset", "build silver data from anchors");
  add_common(build_dataset);
  build_dataset->add_option("--kb", opt.kb_path)->required();
  build_dataset->add_option("--anchored", opt.anchored_path)->required();
  build_dataset->add_option("--seeds", opt.seeds_path,
                            "file of seed entity ids, one per line")
      ->required();
  build_dataset->add_option("--nil-fraction", opt.nil_fraction);

  auto* triage_cmd = app.add_subcommand("triage", "generate candidate sets");
  add_common(triage_cmd);
  triage_cmd->add_option("--kb", opt.kb_path)->required();
  triage_cmd->add_option("--anchors", opt.anchors_path);
  triage_cmd->add_option("--dataset", opt.dataset_path)->required();
  triage_cmd->add_option("--k", opt.k);
  triage_cmd->add_option("--l", opt.l);

  auto* train = app.add_subcommand("train", "train the ranker");
  auto* train_adv =
      app.add_subcommand("train-adv", "train with the adversarial objective");
  for (auto* cmd : {train, train_adv}) {
    add_common(cmd);
    cmd->add_option("--kb", opt.kb_path)->required();
    cmd->add_option("--dataset", opt.dataset_path)->required();
    cmd->add_option("--anchors", opt.anchors_path);
    cmd->add_option("--candidates", opt.candidates_path);
    cmd->add_option("--negatives", opt.negatives);
    cmd->add_option("--epochs", opt.epochs);
    cmd->add_option("--downsample", opt.downsample,
                    "train on a random subset of this many mentions");
    cmd->add_option("--k", opt.k);
    cmd->add_option("--l", opt.l);
  }
  train_adv->add_option("--pool", opt.pool_path, "unlabeled text JSONL");
  train_adv->add_option("--lambda", opt.lambda);
  train_adv->add_option("--adv-stop", opt.adv_stop);
  train_adv->add_option("--el-epochs", opt.el_epochs);
  train_adv->add_option("--preset", opt.preset, "tac-adv | wiki-adv");

  auto* predict = app.add_subcommand("predict", "score and link mentions");
  add_common(predict);
  predict->add_option("--kb", opt.kb_path)->required();
  predict->add_option("--dataset", opt.dataset_path)->required();
  predict->add_option("--anchors", opt.anchors_path);
  predict->add_option("--candidates", opt.candidates_path);
  predict->add_option("--checkpoint", opt.checkpoint_path);
  predict->add_option("--baseline", opt.baseline, "\"nn\" cosine baseline");
  predict->add_option("--threshold", opt.threshold, "NIL threshold");
  predict->add_option("--k", opt.k);
  predict->add_option("--l", opt.l);

  auto* evaluate = app.add_subcommand("evaluate", "score predictions");
  add_common(evaluate);
  evaluate->add_option("--gold", opt.gold_path, "gold mentions JSONL");
  evaluate->add_option("--pred", opt.pred_path, "predictions JSONL");

  auto* stats = app.add_subcommand("stats", "dataset difficulty statistics");
  add_common(stats);
  stats->add_option("--kb", opt.kb_path)->required();
  stats->add_option("--dataset", opt.dataset_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const json config = effective_config(opt);
    if (build_kb->parsed()) return stage_build_kb(opt, config);
    if (build_dataset->parsed()) return stage_build_dataset(opt, config);
    if (triage_cmd->parsed()) return stage_triage(opt, config);
    if (train->parsed()) return stage_train(opt, config, false);
    if (train_adv->parsed()) return stage_train(opt, config, true);
    if (predict->parsed()) return stage_predict(opt, config);
    if (evaluate->parsed()) return stage_evaluate(opt, config);
    if (stats->parsed()) return stage_stats(opt, config);
    std::cerr << "no stage selected\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NotFoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace plink::cli
