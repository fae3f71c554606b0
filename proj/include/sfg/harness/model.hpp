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
#include <utility>
#include <vector>

#include "sfg/core/layers.hpp"
#include "sfg/harness/config.hpp"
#include "sfg/semantic/vision_encoder.hpp"

namespace sfg::harness {

/// Frozen-encoder outputs for one image; computed once per scene.
struct EncodedInput {
  semantic::FeaturePyramid pyramid;
  Tensor text;  // (64,1,1) unit norm
  int height = 0;
  int width = 0;
};

/// Accepts (3,H,W) or single-channel (1,H,W) images; the latter are
/// replicated to three channels.
EncodedInput encode_input(const semantic::StubVisionEncoder& encoder, const Tensor& image,
                          const std::string& prompt);

using Named = std::vector<std::pair<std::string, Var>>;

struct ForwardResult {
  Var prediction;  // (1,H,W)
  Var f_mfa;
  Var text;
  Named intermediates;  // in pipeline order
};

/// Full model on a fresh tape. Disabled modules become pass-throughs:
/// bin -> raw pyramid, bca -> p3, mfa -> mean of aligned scales,
/// mbfm -> F_freq = F_MFA, fsf -> F_fs = F_freq, iseb -> plain decoder.
ForwardResult forward_pipeline(Context& ctx, const EncodedInput& in, const RunConfig& cfg);

struct Prediction {
  Tensor map;
  std::vector<std::pair<std::string, Tensor>> intermediates;
};

/// Inference convenience: encode, run, copy values off the tape.
Prediction predict(const semantic::StubVisionEncoder& encoder, ParamStore& params,
                   const Tensor& image, const std::string& prompt, const RunConfig& cfg);

}  // namespace sfg::harness
