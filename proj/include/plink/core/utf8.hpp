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

#ifndef PLINK_CORE_UTF8_HPP_
#define PLINK_CORE_UTF8_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Character positions throughout the toolkit (mention spans, subword
// alignment, string similarity) are Unicode code point offsets over UTF-8
// text.  Bytes that do not form a valid sequence are treated as one code
// point each, so every input has a defined length.

namespace plink::utf8 {

// Code points of `s`, in order.
std::vector<uint32_t> decode(std::string_view s);

// Byte offset of each code point, plus a final sentinel equal to s.size().
std::vector<size_t> byte_offsets(std::string_view s);

size_t length(std::string_view s);

// Substring covering code points [start, end).  Clamped to the text.
std::string substr(std::string_view s, size_t start, size_t end);

}  // namespace plink::utf8

#endif  // PLINK_CORE_UTF8_HPP_
