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

#include "sfg/semantic/text_encoder.hpp"

#include <cctype>
#include <cmath>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"

namespace sfg::semantic {

std::vector<std::string> tokenize(const std::string& prompt) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char ch : prompt) {
    const bool word = std::isalnum(ch) || ch >= 0x80;
    if (word) {
      cur.push_back(ch < 0x80 ? static_cast<char>(std::tolower(ch)) : static_cast<char>(ch));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

namespace {

void add_feature(Tensor& v, const std::string& feature) {
  const std::uint64_t h = mix64(fnv1a(feature));
  const int bucket = static_cast<int>(h % kTextDim);
  v[bucket] += (h >> 63) ? -1.0 : 1.0;
}

}  // namespace

Tensor encode_prompt_raw(const std::string& prompt) {
  const std::vector<std::string> tokens = tokenize(prompt);
  if (tokens.empty()) throw InputError("prompt has no tokens: '" + prompt + "'");
  Tensor v(Shape{kTextDim, 1, 1});
  for (const std::string& tok : tokens) {
    const std::string padded = "#" + tok + "#";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) add_feature(v, padded.substr(i, 3));
    add_feature(v, "w:" + tok);
  }
  return v;
}

Tensor encode_prompt(const std::string& prompt) {
  Tensor v = encode_prompt_raw(prompt);
  double n2 = 0.0;
  for (double x : v.data()) n2 += x * x;
  if (n2 == 0.0) {
    // Every feature cancelled out; fall back to a fixed direction.
    v[0] = 1.0;
    return v;
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (double& x : v.data()) x *= inv;
  return v;
}

double cosine_similarity(const Tensor& a, const Tensor& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

}  // namespace sfg::semantic
