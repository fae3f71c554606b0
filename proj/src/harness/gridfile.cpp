// Copyright 2026 The sfgnet Authors. All Rights Reserved.
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

#include "sfg/harness/gridfile.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "sfg/core/errors.hpp"

namespace sfg::harness {

namespace {

constexpr unsigned char kMagic[4] = {'S', 'F', 'G', 'R'};
constexpr unsigned char kVersion = 1;
constexpr unsigned char kFloat32 = 1;

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const unsigned char> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<unsigned char> encode_grid(const Tensor& t) {
  std::vector<unsigned char> out(kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(kFloat32);
  put_u32(out, static_cast<std::uint32_t>(t.channels()));
  put_u32(out, static_cast<std::uint32_t>(t.height()));
  put_u32(out, static_cast<std::uint32_t>(t.width()));
  out.reserve(out.size() + 4 * t.size());
  for (double v : t.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

Tensor decode_grid(std::span<const unsigned char> b) {
  if (b.size() < 4 || std::memcmp(b.data(), kMagic, 4) != 0) {
    throw FormatError(b.size() < 4 ? "truncated magic" : "bad magic, expected SFGR", 0);
  }
  if (b.size() < 5) throw FormatError("truncated before version", b.size());
  if (b[4] != kVersion) throw FormatError("unsupported version " + std::to_string(b[4]), 4);
  if (b.size() < 6) throw FormatError("truncated before dtype", b.size());
  if (b[5] != kFloat32) throw FormatError("unsupported dtype " + std::to_string(b[5]), 5);
  if (b.size() < kGridHeaderBytes) throw FormatError("truncated header", b.size());
  const std::uint32_t c = get_u32(b, 6), h = get_u32(b, 10), w = get_u32(b, 14);
  if (c == 0 || h == 0 || w == 0) throw FormatError("zero dimension", 6);
  const std::uint64_t count = static_cast<std::uint64_t>(c) * h * w;
  const std::uint64_t need = kGridHeaderBytes + 4 * count;
  if (b.size() < need) {
    throw FormatError("truncated payload, need " + std::to_string(need) + " bytes", b.size());
  }
  if (b.size() > need) throw FormatError("trailing bytes after payload", need);
  Tensor t(Shape{static_cast<int>(c), static_cast<int>(h), static_cast<int>(w)});
  for (std::size_t i = 0; i < count; ++i)
    t[i] = std::bit_cast<float>(get_u32(b, kGridHeaderBytes + 4 * i));
  return t;
}

void write_grid(const std::filesystem::path& path, const Tensor& t) {
  const std::vector<unsigned char> bytes = encode_grid(t);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

Tensor read_grid(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                         std::istreambuf_iterator<char>());
  return decode_grid(bytes);
}

}  // namespace sfg::harness
