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

#ifndef PLINK_RANKER_CONFIG_HPP_
#define PLINK_RANKER_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace plink::ranker {

// Ranker hyperparameters.  Layer widths, dropout and learning rate default
// to the selected search configuration; hidden layers are rectified and the
// scalar output is squashed with tanh so scores live in (-1, 1).
struct RankerConfig {
  size_t dim = 768;                          // encoder dimension d
  std::vector<size_t> string_layers{512};    // mention/name tower
  std::vector<size_t> context_layers{512};   // context tower
  std::vector<size_t> final_layers{512, 256};  // scoring head; 1-unit output appended
  double dropout = 0.2;
  double learning_rate = 1e-4;
  double margin = 0.1;  // hinge epsilon
  size_t n_negatives = 4;
  size_t batch_size = 32;
  size_t epochs = 50;
  uint64_t rng_seed = 1;
  bool use_popularity = false;  // +P: popularity scalar into the final head
  bool invariant_layer = false;  // h_s0: shared d->d rectified layer
  size_t adv_hidden = 0;  // language classifier hidden width, 0 = no head

  void validate() const;
  nlohmann::json to_json() const;
  static RankerConfig from_json(const nlohmann::json& j);
  bool operator==(const RankerConfig&) const = default;
};

}  // namespace plink::ranker

#endif  // PLINK_RANKER_CONFIG_HPP_
