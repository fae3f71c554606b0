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

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "sfg/core/tensor.hpp"

namespace sfg::harness {

/// Intermediate dump format: "SFGR", version byte (1), dtype byte (1 =
/// float32), C/H/W as little-endian u32, then C*H*W little-endian float32.
inline constexpr std::size_t kGridHeaderBytes = 18;

std::vector<unsigned char> encode_grid(const Tensor& t);
/// Throws FormatError with the byte offset of the first bad or missing field.
Tensor decode_grid(std::span<const unsigned char> bytes);

void write_grid(const std::filesystem::path& path, const Tensor& t);
Tensor read_grid(const std::filesystem::path& path);

}  // namespace sfg::harness
