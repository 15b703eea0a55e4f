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

#include "plink/core/io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "plink/core/error.hpp"

namespace plink {

namespace {

template <typename T>
void write_le(std::ostream& out, T v) {
  unsigned char buf[sizeof(T)];
  uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof(T));
  for (size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& in) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw ParseError("unexpected end of binary stream");
  uint64_t bits = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    bits |= static_cast<uint64_t>(buf[i]) << (8 * i);
  T v;
  std::memcpy(&v, &bits, sizeof(T));
  return v;
}

}  // namespace

void write_u32(std::ostream& out, uint32_t v) { write_le(out, v); }
void write_u64(std::ostream& out, uint64_t v) { write_le(out, v); }
void write_f32(std::ostream& out, float v) { write_le(out, v); }

void write_f32_array(std::ostream& out, const float* data, size_t n) {
  for (size_t i = 0; i < n; ++i) write_f32(out, data[i]);
}

void write_string(std::ostream& out, std::string_view s) {
  write_u32(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t read_u32(std::istream& in) { return read_le<uint32_t>(in); }
uint64_t read_u64(std::istream& in) { return read_le<uint64_t>(in); }
float read_f32(std::istream& in) { return read_le<float>(in); }

void read_f32_array(std::istream& in, float* data, size_t n) {
  for (size_t i = 0; i < n; ++i) data[i] = read_f32(in);
}

std::string read_string(std::istream& in) {
  const uint32_t n = read_u32(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw ParseError("unexpected end of binary stream");
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw NotFoundError("no such file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write file: " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void for_each_line(
    const std::filesystem::path& path,
    const std::function<void(size_t, std::string_view)>& fn) {
  if (!std::filesystem::exists(path))
    throw NotFoundError("no such file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    fn(number, line);
  }
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view s) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = fnv1a64(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace plink
