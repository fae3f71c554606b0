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

#include "sfg/core/layers.hpp"

namespace sfg::semantic {

struct BcaResult {
  Var out;        // alpha * x_text + beta * Expand(text_visual)
  Var x_text;     // text-guided visual map, (C,H,W)
  Var text_visual;  // visual-guided text vector, (C,1,1)
  Var text_gate;  // (1,H,W) per-position response to the text key
  Var attention;  // (1,H,W) text-query weights over visual positions
};

/// Bidirectional cross-attention between the visual map x (C,H,W) and the
/// text embedding t (D,1,1).
///
/// Visual queries against the single text token: a one-key softmax is
/// identically 1, so the query-key score is passed through a sigmoid
/// instead and gates the text value at each position, added back onto x.
/// The text query attends over all HW visual tokens (softmax over
/// positions) and the pooled value is projected by `bca.out`.
BcaResult bca_forward(Context& ctx, Var x, Var t);

}  // namespace sfg::semantic
