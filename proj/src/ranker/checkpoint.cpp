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

#include "plink/ranker/checkpoint.hpp"

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "plink/core/io.hpp"

namespace plink::ranker {

using nlohmann::json;

namespace {
constexpr int kFormatVersion = 1;
}

void save_checkpoint(const RankerModel<float>& model,
                     const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);

  auto params = param_table(model);

  json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["config"] = model.config.to_json();
  json tensors = json::array();
  for (const auto& p : params)
    tensors.push_back(json{{"name", p.name}, {"size", p.size}});
  manifest["tensors"] = tensors;
  write_text_file(directory / "manifest.json", manifest.dump(2) + "\n");

  std::ofstream out(directory / "weights.bin",
                    std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + (directory / "weights.bin").string());
  for (const auto& p : params) write_f32_array(out, p.data, p.size);
  if (!out) throw IoError("write failed: " + (directory / "weights.bin").string());
}

RankerModel<float> load_checkpoint(
    const std::filesystem::path& directory,
    const std::optional<RankerConfig>& caller_config) {
  const auto manifest_path = directory / "manifest.json";
  json manifest;
  try {
    manifest = json::parse(read_text_file(manifest_path));
  } catch (const json::exception& e) {
    throw ParseError("bad checkpoint manifest " + manifest_path.string() +
                     ": " + e.what());
  }
  if (manifest.value("format_version", -1) != kFormatVersion)
    throw ParseError("unsupported checkpoint format in " +
                     manifest_path.string());

  const RankerConfig config = RankerConfig::from_json(manifest.at("config"));
  if (caller_config && !(*caller_config == config))
    std::cerr << "warning: checkpoint config in " << directory.string()
              << " overrides the caller's config\n";

  // Rebuild the architecture, then overwrite every parameter from the file.
  RankerModel<float> model = init_model<float>(config, 0);
  auto params = param_table(model);

  const auto& tensors = manifest.at("tensors");
  if (tensors.size() != params.size())
    throw ParseError("checkpoint tensor count mismatch in " +
                     manifest_path.string());
  size_t expected_floats = 0;
  for (size_t i = 0; i < params.size(); ++i) {
    const auto& t = tensors[i];
    if (t.at("name").get<std::string>() != params[i].name ||
        t.at("size").get<size_t>() != params[i].size)
      throw ParseError("checkpoint shape mismatch at tensor " +
                       params[i].name);
    expected_floats += params[i].size;
  }

  const auto weights_path = directory / "weights.bin";
  std::error_code ec;
  const auto file_size = std::filesystem::file_size(weights_path, ec);
  if (ec) throw IoError("cannot stat " + weights_path.string());
  if (file_size != expected_floats * sizeof(float))
    throw ParseError("checkpoint weights size mismatch: " +
                     weights_path.string());

  std::ifstream in(weights_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + weights_path.string());
  for (auto& p : params) read_f32_array(in, p.data, p.size);
  return model;
}

}  // namespace plink::ranker
