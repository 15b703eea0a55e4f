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

#include "plink/encoder/stub_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plink/core/error.hpp"
#include "plink/core/io.hpp"
#include "plink/core/rng.hpp"
#include "plink/core/utf8.hpp"

namespace plink::encoder {

namespace {

// Orthonormalizes the rows of `m` (dim x dim, row-major) with modified
// Gram-Schmidt.  Rows are assumed linearly independent, which holds almost
// surely for gaussian draws.
void gram_schmidt(std::vector<double>& m, size_t dim) {
  for (size_t r = 0; r < dim; ++r) {
    double* row = m.data() + r * dim;
    for (size_t p = 0; p < r; ++p) {
      const double* prev = m.data() + p * dim;
      double dot = 0.0;
      for (size_t c = 0; c < dim; ++c) dot += row[c] * prev[c];
      for (size_t c = 0; c < dim; ++c) row[c] -= dot * prev[c];
    }
    double norm = 0.0;
    for (size_t c = 0; c < dim; ++c) norm += row[c] * row[c];
    norm = std::sqrt(norm);
    for (size_t c = 0; c < dim; ++c) row[c] /= norm;
  }
}

std::vector<double> make_orthogonal(size_t dim, double spread, Rng& rng) {
  std::vector<double> m(dim * dim);
  if (spread > 0.0) {
    for (size_t r = 0; r < dim; ++r)
      for (size_t c = 0; c < dim; ++c)
        m[r * dim + c] = (r == c ? 1.0 : 0.0) + spread * rng.normal();
  } else {
    for (auto& v : m) v = rng.normal();
  }
  gram_schmidt(m, dim);
  return m;
}

// Rotates the leading `block` components, passes the rest through: the
// matrix diag(R, I) stays orthogonal.
std::vector<double> make_block_orthogonal(size_t dim, size_t block,
                                          double spread, Rng& rng) {
  if (block == 0 || block >= dim) return make_orthogonal(dim, spread, rng);
  const auto r = make_orthogonal(block, spread, rng);
  std::vector<double> m(dim * dim, 0.0);
  for (size_t i = 0; i < dim; ++i) m[i * dim + i] = 1.0;
  for (size_t i = 0; i < block; ++i)
    for (size_t j = 0; j < block; ++j) m[i * dim + j] = r[i * block + j];
  return m;
}

bool is_tag_char(uint32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9') || cp == '_' ||
         cp == '-';
}

}  // namespace

StubEncoder::StubEncoder(Config config) : config_(std::move(config)) {
  if (config_.dim == 0 || config_.subword_limit == 0 || config_.max_chunk == 0)
    throw ValidationError("stub encoder: dim, subword_limit and max_chunk must be positive");
  for (const auto& language : config_.languages) {
    Rng rng(config_.seed ^ fnv1a64("lang:" + language));
    transforms_.emplace(
        language, make_block_orthogonal(config_.dim, config_.transform_block,
                                        config_.transform_spread, rng));
  }
  std::ostringstream fp;
  fp << "stub-v1:d=" << config_.dim << ":seed=" << config_.seed
     << ":limit=" << config_.subword_limit << ":chunk=" << config_.max_chunk
     << ":spread=" << config_.transform_spread
     << ":bias=" << config_.component_bias
     << ":block=" << config_.transform_block << ":langs=";
  for (const auto& [language, transform] : transforms_) fp << language << ',';
  fingerprint_ = fp.str();
}

std::vector<Subword> StubEncoder::tokenize(const std::string& text) const {
  std::vector<Subword> out;
  const auto cps = utf8::decode(text);
  const auto offsets = utf8::byte_offsets(text);

  size_t i = 0;
  while (i < cps.size()) {
    if (cps[i] == ' ' || cps[i] == '\t' || cps[i] == '\n' || cps[i] == '\r') {
      ++i;
      continue;
    }
    size_t word_end = i;
    while (word_end < cps.size() && cps[word_end] != ' ' &&
           cps[word_end] != '\t' && cps[word_end] != '\n' &&
           cps[word_end] != '\r')
      ++word_end;

    // Language-prefix convention: "<code>@rest" with a registered code.
    size_t body_start = i;
    std::string tag;
    for (size_t at = i; at < word_end && at - i <= 8; ++at) {
      if (cps[at] == '@') {
        if (at > i) {
          bool plausible = true;
          for (size_t k = i; k < at; ++k)
            if (!is_tag_char(cps[k])) plausible = false;
          if (plausible) {
            const std::string code(text, offsets[i], offsets[at] - offsets[i]);
            if (transforms_.count(code) > 0 && at + 1 < word_end) {
              tag = code;
              body_start = at + 1;
            }
          }
        }
        break;
      }
      if (!is_tag_char(cps[at])) break;
    }

    for (size_t chunk = body_start; chunk < word_end;
         chunk += config_.max_chunk) {
      const size_t chunk_end = std::min(chunk + config_.max_chunk, word_end);
      Subword sw;
      sw.start = chunk;
      sw.end = chunk_end;
      sw.text.assign(text, offsets[chunk], offsets[chunk_end] - offsets[chunk]);
      sw.tag = tag;
      out.push_back(std::move(sw));
    }
    i = word_end;
  }
  return out;
}

std::vector<double> StubEncoder::base_vector(const std::string& text,
                                             size_t position,
                                             bool language_tagged) const {
  // Depends on the subword string and the position parity only.
  uint64_t state = fnv1a64(text) ^ config_.seed ^
                   ((position & 1) ? 0x9e3779b97f4a7c15ULL : 0);
  // Language-tagged material concentrates in a cone (the way a script
  // clusters); untagged tokens stay isotropic.
  const double bias = language_tagged ? config_.component_bias : 0.0;
  std::vector<double> v(config_.dim);
  double norm = 0.0;
  for (size_t j = 0; j < config_.dim; ++j) {
    // Two splitmix draws build one gaussian via Box-Muller.
    const double u1 =
        (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    v[j] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2) +
           bias;
    norm += v[j] * v[j];
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

std::vector<std::vector<float>> StubEncoder::encode(
    const std::vector<Subword>& subwords) const {
  std::vector<std::vector<float>> out(subwords.size());
  const long long n = static_cast<long long>(subwords.size());
#pragma omp parallel for schedule(static) if (n >= 16)
  for (long long i = 0; i < n; ++i) {
    const Subword& sw = subwords[static_cast<size_t>(i)];
    std::vector<double> v =
        base_vector(sw.text, static_cast<size_t>(i), !sw.tag.empty());
    if (!sw.tag.empty()) {
      auto it = transforms_.find(sw.tag);
      if (it != transforms_.end()) {
        const std::vector<double>& q = it->second;
        std::vector<double> rotated(config_.dim, 0.0);
        for (size_t r = 0; r < config_.dim; ++r) {
          const double* row = q.data() + r * config_.dim;
          double acc = 0.0;
          for (size_t c = 0; c < config_.dim; ++c) acc += row[c] * v[c];
          rotated[r] = acc;
        }
        v = std::move(rotated);
      }
    }
    std::vector<float> f(config_.dim);
    for (size_t j = 0; j < config_.dim; ++j) f[j] = static_cast<float>(v[j]);
    out[static_cast<size_t>(i)] = std::move(f);
  }
  return out;
}

std::string StubEncoder::fingerprint() const { return fingerprint_; }

const std::vector<double>* StubEncoder::transform(
    const std::string& language) const {
  auto it = transforms_.find(language);
  return it == transforms_.end() ? nullptr : &it->second;
}

}  // namespace plink::encoder
