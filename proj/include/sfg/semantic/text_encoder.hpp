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

#include <string>
#include <vector>

#include "sfg/core/tensor.hpp"

namespace sfg::semantic {

inline constexpr int kTextDim = 64;

/// Lowercased word tokens; anything that is not an ASCII letter or digit
/// separates tokens (bytes >= 0x80 are kept as part of a word).
std::vector<std::string> tokenize(const std::string& prompt);

/// Hashed bag of character trigrams (plus the whole token), signed, before
/// normalization. Shape (kTextDim,1,1). Throws InputError when the prompt
/// has no tokens.
Tensor encode_prompt_raw(const std::string& prompt);

/// `encode_prompt_raw` scaled to unit L2 norm.
Tensor encode_prompt(const std::string& prompt);

double cosine_similarity(const Tensor& a, const Tensor& b);

}  // namespace sfg::semantic
