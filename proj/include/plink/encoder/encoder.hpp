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

#ifndef PLINK_ENCODER_ENCODER_HPP_
#define PLINK_ENCODER_ENCODER_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace plink::encoder {

// One subword with its code point span in the tokenized text.  `tag` is an
// adapter-private annotation (the stub uses it for the language transform);
// generic code must pass subwords to encode() unchanged and ignore it.
struct Subword {
  std::string text;
  size_t start = 0;  // code point offset, inclusive
  size_t end = 0;    // code point offset, exclusive
  std::string tag;
};

// Contract for pluggable subword encoders.  Implementations must be
// deterministic for fixed weights and must return exactly one vector per
// subword.  Wrapping a real pretrained multilingual encoder means
// implementing these three members; everything downstream (pooling, context
// windows, caching, training) is encoder-agnostic.
class EncoderAdapter {
 public:
  virtual ~EncoderAdapter() = default;

  virtual size_t dim() const = 0;
  virtual size_t subword_limit() const = 0;  // hard input length cap

  virtual std::vector<Subword> tokenize(const std::string& text) const = 0;

  // One dim()-vector per subword, in order.
  virtual std::vector<std::vector<float>> encode(
      const std::vector<Subword>& subwords) const = 0;

  // Stable identity of the encoder weights/configuration; part of every
  // cache key.
  virtual std::string fingerprint() const = 0;
};

}  // namespace plink::encoder

#endif  // PLINK_ENCODER_ENCODER_HPP_
