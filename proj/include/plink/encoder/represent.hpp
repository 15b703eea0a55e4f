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

#ifndef PLINK_ENCODER_REPRESENT_HPP_
#define PLINK_ENCODER_REPRESENT_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "plink/corpus/corpus.hpp"
#include "plink/encoder/encoder.hpp"
#include "plink/kb/kb.hpp"

namespace plink::encoder {

// The four representations of a mention-entity pair plus the popularity
// feature.  Training code is templated on the scalar, so the bundle is too;
// encoders produce float bundles.
template <typename T>
struct Bundle {
  std::vector<T> m_s;  // mention string
  std::vector<T> e_s;  // entity name
  std::vector<T> m_c;  // mention context
  std::vector<T> e_c;  // entity description
  T popularity = T(0);

  template <typename U>
  Bundle<U> cast() const {
    Bundle<U> out;
    auto conv = [](const std::vector<T>& v) {
      return std::vector<U>(v.begin(), v.end());
    };
    out.m_s = conv(m_s);
    out.e_s = conv(e_s);
    out.m_c = conv(m_c);
    out.e_c = conv(e_c);
    out.popularity = static_cast<U>(popularity);
    return out;
  }
};

using RepresentationBundle = Bundle<float>;

// Content-addressed vector cache with read-or-compute semantics, optionally
// persisted.  On disk: one binary file per key holding an 8-byte length
// header followed by little-endian float32 components, plus a manifest JSON
// mapping keys to files and recording the encoder fingerprints seen.
class RepCache {
 public:
  RepCache() = default;                                // memory only
  explicit RepCache(std::filesystem::path directory);  // persistent
  ~RepCache();

  std::vector<float> get_or_compute(
      const std::string& key, const std::string& fingerprint,
      const std::function<std::vector<float>()>& compute);

  void flush();  // writes the manifest; no-op for memory-only caches

  size_t hits() const { return hits_; }
  size_t misses() const { return misses_; }

 private:
  std::optional<std::vector<float>> read_entry(const std::string& key);
  void write_entry(const std::string& key, const std::vector<float>& value);

  std::mutex mutex_;
  std::map<std::string, std::vector<float>> memory_;
  std::optional<std::filesystem::path> directory_;
  std::map<std::string, std::string> files_;  // key -> file name
  std::vector<std::string> fingerprints_;
  size_t hits_ = 0;
  size_t misses_ = 0;
  bool dirty_ = false;
};

// Sentence-level encoding of the mention's sentence, max-pooled over exactly
// the subwords whose spans overlap the mention.  Throws ValidationError when
// the span aligns with no subword.
std::vector<float> mention_string_rep(const EncoderAdapter& enc,
                                      const corpus::Document& doc,
                                      const corpus::Mention& mention);

// Standalone encoding of the entity name, pooled over all its subwords.
std::vector<float> entity_name_rep(const EncoderAdapter& enc,
                                   const kb::Entity& entity);

// Context window around the mention sentence, grown by alternately
// appending the following and preceding sentence while the total subword
// count stays within the encoder limit; pooled over every subword in the
// window.  A mention sentence longer than the limit is truncated, never an
// error.
std::vector<float> mention_context_rep(const EncoderAdapter& enc,
                                       const corpus::Document& doc,
                                       const corpus::Mention& mention);

// First subword_limit subwords of the description, pooled; a description
// with no subwords yields the zero vector.
std::vector<float> entity_context_rep(const EncoderAdapter& enc,
                                      const kb::Entity& entity);

// All four representations plus popularity_score(kb, entity).  With a cache,
// each representation is computed at most once per encoder fingerprint.
RepresentationBundle build_bundle(const EncoderAdapter& enc,
                                  const kb::KnowledgeBase& kb,
                                  const corpus::Document& doc,
                                  const corpus::Mention& mention,
                                  const std::string& entity_id,
                                  RepCache* cache = nullptr);

}  // namespace plink::encoder

#endif  // PLINK_ENCODER_REPRESENT_HPP_
