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

#ifndef PLINK_RANKER_CHECKPOINT_HPP_
#define PLINK_RANKER_CHECKPOINT_HPP_

#include <filesystem>
#include <optional>

#include "plink/ranker/model.hpp"

namespace plink::ranker {

// Checkpoint directory layout: manifest.json (format version, full config,
// tensor names and sizes in parameter-table order) plus weights.bin
// (little-endian float32, concatenated in manifest order).  Loading a
// truncated or inconsistent checkpoint throws without returning a partial
// model.
void save_checkpoint(const RankerModel<float>& model,
                     const std::filesystem::path& directory);

// When `caller_config` is given and disagrees with the stored config, the
// stored config wins and a warning is printed to stderr.
RankerModel<float> load_checkpoint(
    const std::filesystem::path& directory,
    const std::optional<RankerConfig>& caller_config = std::nullopt);

}  // namespace plink::ranker

#endif  // PLINK_RANKER_CHECKPOINT_HPP_
