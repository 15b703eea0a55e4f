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

#include "plink/core/utf8.hpp"

namespace plink::utf8 {

namespace {

// Decodes one code point starting at byte `i`; returns its byte width.
// Invalid sequences decode as a single byte.
size_t decode_one(std::string_view s, size_t i, uint32_t* cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  size_t width;
  uint32_t value;
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  } else if ((b0 & 0xe0) == 0xc0) {
    width = 2;
    value = b0 & 0x1f;
  } else if ((b0 & 0xf0) == 0xe0) {
    width = 3;
    value = b0 & 0x0f;
  } else if ((b0 & 0xf8) == 0xf0) {
    width = 4;
    value = b0 & 0x07;
  } else {
    *cp = b0;
    return 1;
  }
  if (i + width > s.size()) {
    *cp = b0;
    return 1;
  }
  for (size_t k = 1; k < width; ++k) {
    const auto bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xc0) != 0x80) {
      *cp = b0;
      return 1;
    }
    value = (value << 6) | (bk & 0x3f);
  }
  *cp = value;
  return width;
}

}  // namespace

std::vector<uint32_t> decode(std::string_view s) {
  std::vector<uint32_t> out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp = 0;
    i += decode_one(s, i, &cp);
    out.push_back(cp);
  }
  return out;
}

std::vector<size_t> byte_offsets(std::string_view s) {
  std::vector<size_t> offsets;
  offsets.reserve(s.size() + 1);
  size_t i = 0;
  while (i < s.size()) {
    offsets.push_back(i);
    uint32_t cp = 0;
    i += decode_one(s, i, &cp);
  }
  offsets.push_back(s.size());
  return offsets;
}

size_t length(std::string_view s) { return byte_offsets(s).size() - 1; }

std::string substr(std::string_view s, size_t start, size_t end) {
  const auto offsets = byte_offsets(s);
  const size_t n = offsets.size() - 1;
  if (start > n) start = n;
  if (end > n) end = n;
  if (start >= end) return std::string();
  return std::string(s.substr(offsets[start], offsets[end] - offsets[start]));
}

}  // namespace plink::utf8
