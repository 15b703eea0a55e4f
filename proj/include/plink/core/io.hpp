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

#ifndef PLINK_CORE_IO_HPP_
#define PLINK_CORE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace plink {

// All binary formats are little-endian regardless of host order.
void write_u32(std::ostream& out, uint32_t v);
void write_u64(std::ostream& out, uint64_t v);
void write_f32(std::ostream& out, float v);
void write_f32_array(std::ostream& out, const float* data, size_t n);
void write_string(std::ostream& out, std::string_view s);  // u32 length + bytes

uint32_t read_u32(std::istream& in);
uint64_t read_u64(std::istream& in);
float read_f32(std::istream& in);
void read_f32_array(std::istream& in, float* data, size_t n);
std::string read_string(std::istream& in);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Calls `fn(line_number, line)` for every line of a text file; line numbers
// are 1-based.  Blank lines are skipped.
void for_each_line(
    const std::filesystem::path& path,
    const std::function<void(size_t, std::string_view)>& fn);

uint64_t fnv1a64(std::string_view s);
std::string fnv1a64_hex(std::string_view s);

}  // namespace plink

#endif  // PLINK_CORE_IO_HPP_
