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

// Generates a synthetic two-language linking world as toolkit input files,
// so the whole CLI pipeline can be exercised without external data.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plink/synth/world.hpp"

int main(int argc, char** argv) {
  CLI::App app{"plink-synth: generate a synthetic two-language corpus"};
  plink::synth::SynthConfig config;
  std::string out = "synth";
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--dim", config.dim);
  app.add_option("--entities", config.n_entities);
  app.add_option("--concepts", config.n_concepts);
  app.add_option("--train-mentions", config.n_train_mentions);
  app.add_option("--eval-mentions", config.n_eval_mentions);
  app.add_option("--candidates", config.n_candidates);
  app.add_option("--seed", config.seed);
  app.add_option("--spread", config.transform_spread,
                 "language transform strength");
  app.add_option("--lang-a", config.lang_a);
  app.add_option("--lang-b", config.lang_b);
  CLI11_PARSE(app, argc, argv);

  try {
    const auto world = plink::synth::make_world(config);
    plink::synth::write_world(world, out);
    std::cout << "wrote synthetic world to " << out << " (" << config.n_entities
              << " entities, " << config.n_train_mentions << " train mentions, "
              << config.n_eval_mentions << " eval mentions per language)\n";
    std::cout << "encoder config for --config: {\"encoder\": {\"kind\": \"stub\", "
              << "\"dim\": " << config.dim << ", \"seed\": "
              << (config.seed ^ 0x5131ULL) << ", \"subword_limit\": "
              << config.encoder_subword_limit << ", \"languages\": [\""
              << config.lang_a << "\", \"" << config.lang_b
              << "\"], \"transform_spread\": " << config.transform_spread
              << ", \"component_bias\": " << config.component_bias
              << ", \"transform_block\": " << config.transform_block << "}}\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
