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

#include "plink/ranker/config.hpp"

#include "plink/core/error.hpp"

namespace plink::ranker {

using nlohmann::json;

void RankerConfig::validate() const {
  if (dim < 1) throw ValidationError("ranker config: dim must be >= 1");
  for (const auto* layers : {&string_layers, &context_layers, &final_layers})
    for (size_t w : *layers)
      if (w < 1) throw ValidationError("ranker config: layer widths must be >= 1");
  if (string_layers.empty() || context_layers.empty())
    throw ValidationError("ranker config: towers need at least one layer");
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw ValidationError("ranker config: dropout must be in [0, 1)");
  if (margin <= 0.0) throw ValidationError("ranker config: margin must be > 0");
  if (n_negatives < 1)
    throw ValidationError("ranker config: n_negatives must be >= 1");
  if (batch_size < 1)
    throw ValidationError("ranker config: batch_size must be >= 1");
  if (learning_rate < 0.0)
    throw ValidationError("ranker config: learning_rate must be >= 0");
}

json RankerConfig::to_json() const {
  return json{{"dim", dim},
              {"string_layers", string_layers},
              {"context_layers", context_layers},
              {"final_layers", final_layers},
              {"dropout", dropout},
              {"learning_rate", learning_rate},
              {"margin", margin},
              {"n_negatives", n_negatives},
              {"batch_size", batch_size},
              {"epochs", epochs},
              {"rng_seed", rng_seed},
              {"use_popularity", use_popularity},
              {"invariant_layer", invariant_layer},
              {"adv_hidden", adv_hidden}};
}

RankerConfig RankerConfig::from_json(const json& j) {
  RankerConfig cfg;
  cfg.dim = j.value("dim", cfg.dim);
  if (j.contains("string_layers"))
    cfg.string_layers = j["string_layers"].get<std::vector<size_t>>();
  if (j.contains("context_layers"))
    cfg.context_layers = j["context_layers"].get<std::vector<size_t>>();
  if (j.contains("final_layers"))
    cfg.final_layers = j["final_layers"].get<std::vector<size_t>>();
  cfg.dropout = j.value("dropout", cfg.dropout);
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.margin = j.value("margin", cfg.margin);
  cfg.n_negatives = j.value("n_negatives", cfg.n_negatives);
  cfg.batch_size = j.value("batch_size", cfg.batch_size);
  cfg.epochs = j.value("epochs", cfg.epochs);
  cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
  cfg.use_popularity = j.value("use_popularity", cfg.use_popularity);
  cfg.invariant_layer = j.value("invariant_layer", cfg.invariant_layer);
  cfg.adv_hidden = j.value("adv_hidden", cfg.adv_hidden);
  cfg.validate();
  return cfg;
}

}  // namespace plink::ranker
