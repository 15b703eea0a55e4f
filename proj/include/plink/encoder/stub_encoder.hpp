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

#ifndef PLINK_ENCODER_STUB_ENCODER_HPP_
#define PLINK_ENCODER_STUB_ENCODER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plink/encoder/encoder.hpp"

namespace plink::encoder {

// Deterministic hash-based encoder used for tests, desk-scale runs, and the
// synthetic transfer experiment.  A subword's vector depends only on the
// subword string, the parity of its position, and an optional per-language
// orthogonal transform, so representations are reproducible and cacheable.
//
// Language transforms are selected through a token convention: a word of the
// form "<code>@rest" whose code names a registered language is split into
// the subwords of "rest", each encoded as Q_code * v(rest-chunk).  The same
// latent token therefore has rotated-but-norm-equal images across languages,
// which is what the cross-language experiments rely on.  Words without a
// registered prefix encode untransformed.
class StubEncoder : public EncoderAdapter {
 public:
  struct Config {
    size_t dim = 768;
    uint64_t seed = 1;
    size_t subword_limit = 512;
    // Languages given an orthogonal transform.  `transform_spread` <= 0
    // draws a fully random orthogonal matrix per language; a positive value
    // s orthonormalizes I + s * G (G gaussian), giving a near-identity
    // rotation whose strength grows with s.
    std::vector<std::string> languages;
    double transform_spread = 0.0;
    size_t max_chunk = 4;  // code points per subword
    // Mean added to the gaussian components of language-tagged subwords
    // before normalization.  Zero gives vectors uniform on the sphere; a
    // positive value concentrates each language's material in a rotated
    // cone, so the populations are separable the way scripts are.
    double component_bias = 0.0;
    // Number of leading components the language transform rotates; the
    // rest pass through unchanged (block-diagonal orthogonal).  0 rotates
    // the full vector.  A partial block models representations in which
    // some feature directions are language-specific and others universal.
    size_t transform_block = 0;
  };

  explicit StubEncoder(Config config);

  size_t dim() const override { return config_.dim; }
  size_t subword_limit() const override { return config_.subword_limit; }
  std::vector<Subword> tokenize(const std::string& text) const override;
  std::vector<std::vector<float>> encode(
      const std::vector<Subword>& subwords) const override;
  std::string fingerprint() const override;

  // Row-major dim x dim orthogonal transform for a registered language.
  const std::vector<double>* transform(const std::string& language) const;

 private:
  std::vector<double> base_vector(const std::string& text, size_t position,
                                  bool language_tagged) const;

  Config config_;
  std::map<std::string, std::vector<double>> transforms_;
  std::string fingerprint_;
};

}  // namespace plink::encoder

#endif  // PLINK_ENCODER_STUB_ENCODER_HPP_
