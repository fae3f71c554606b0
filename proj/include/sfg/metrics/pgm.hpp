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

#include "sfg/core/tensor.hpp"

namespace sfg::metrics {

/// Reads a binary (P5) or ASCII (P2) greymap with maxval <= 255 as a
/// (1,H,W) tensor scaled to [0,1]. Malformed files throw FormatError with
/// the byte offset of the problem; a missing file throws InputError.
Tensor read_pgm(const std::filesystem::path& path);

/// Writes a P5 file; values are clamped to [0,1] and rounded to 8 bits.
void write_pgm(const std::filesystem::path& path, const Tensor& img);

}  // namespace sfg::metrics
