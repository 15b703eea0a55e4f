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

#include "plink/adversarial/adversarial.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "plink/core/io.hpp"
#include "plink/core/kernels.hpp"
#include "plink/encoder/encoder.hpp"

namespace plink::adversarial {

using nlohmann::json;

AdversarialConfig tac_adv_preset(std::string source, std::string target) {
  AdversarialConfig config;
  config.lambda = 0.25;
  config.adv_stop_epoch = std::nullopt;  // adversary active for the whole run
  config.adv_text_kind = AdvTextKind::kName;
  config.languages = {std::move(source), std::move(target)};
  return config;
}

AdversarialConfig wiki_adv_preset(std::string source, std::string target) {
  AdversarialConfig config;
  config.lambda = 0.01;
  config.adv_stop_epoch = 50;
  config.adv_text_kind = AdvTextKind::kName;
  config.languages = {std::move(source), std::move(target)};
  return config;
}

UnlabeledPool load_pool(const std::filesystem::path& path,
                        const std::vector<std::string>& languages) {
  if (languages.size() != 2)
    throw ValidationError("pool loading requires exactly two languages");
  UnlabeledPool pool;
  for_each_line(path, [&](size_t line_number, std::string_view line) {
    json obj;
    try {
      obj = json::parse(line);
      const auto language = obj.at("language").get<std::string>();
      const auto text = obj.at("text").get<std::string>();
      if (language == languages[0])
        pool.texts[0].push_back(text);
      else if (language == languages[1])
        pool.texts[1].push_back(text);
      else
        throw ValidationError("pool language \"" + language +
                              "\" is not one of the configured pair");
    } catch (const json::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": bad pool line: " + e.what());
    }
  });
  return pool;
}

std::vector<float> encode_pool_text(const encoder::EncoderAdapter& enc,
                                    const std::string& text) {
  auto subwords = enc.tokenize(text);
  if (subwords.empty())
    throw ValidationError("pool text tokenizes to no subwords: \"" + text +
                          "\"");
  if (subwords.size() > enc.subword_limit())
    subwords.resize(enc.subword_limit());
  const auto vectors = enc.encode(subwords);
  std::vector<float> flat(vectors.size() * enc.dim());
  for (size_t i = 0; i < vectors.size(); ++i)
    std::copy(vectors[i].begin(), vectors[i].end(),
              flat.begin() + static_cast<ptrdiff_t>(i * enc.dim()));
  std::vector<float> out(enc.dim());
  kernels::max_pool(flat.data(), vectors.size(), enc.dim(), out.data());
  return out;
}

void save_history(const History& history, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& record : history) {
    json obj{{"epoch", record.epoch},
             {"el_loss", record.el_loss},
             {"cls_loss", record.cls_loss}};
    if (record.adv_loss) obj["adv_loss"] = *record.adv_loss;
    out << obj.dump() << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace plink::adversarial
