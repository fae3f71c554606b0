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

#include <optional>
#include <span>
#include <vector>

#include "sfg/core/tape.hpp"

// Differentiable primitives. Every function records one node on the tape of
// its first argument and throws ShapeError on incompatible operands.
namespace sfg::ops {

// Elementwise.
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
Var scale(Var a, double s);
Var sigmoid(Var x);
Var relu(Var x);

// Broadcasting products.
/// x (C,H,W) * g (C,1,1): per-channel gate.
Var mul_channel(Var x, Var g);
/// x (C,H,W) * s (1,H,W): per-position gate shared across channels.
Var mul_spatial(Var x, Var s);
/// x * s where s is a (1,1,1) scalar.
Var mul_scalar(Var x, Var s);
/// v (C,1,1) broadcast to (C,H,W).
Var expand(Var v, int h, int w);

/// 1x1 channel projection. x (C,H,W) or (C,1,1); w is the (1,O,C) matrix;
/// b, when given, is (O,1,1).
Var linear(Var x, Var w, std::optional<Var> b = std::nullopt);

enum class Padding { kZero, kReplicate };

struct ConvSpec {
  int kernel = 3;
  int stride = 1;
  Padding padding = Padding::kZero;
};

/// k x k convolution with padding k/2. w is (O, C, k*k); b is (O,1,1).
Var conv2d(Var x, Var w, std::optional<Var> b, const ConvSpec& spec);

// Token matrices are (1, rows, cols).
Var matmul(Var a, Var b);
Var transpose(Var a);
/// (C,H,W) -> (1, H*W, C).
Var to_tokens(Var x);
/// (1, H*W, C) -> (C,H,W).
Var from_tokens(Var t, int h, int w);
/// Same row-major data under a new shape of equal size.
Var reshape(Var x, Shape shape);

enum class Axis { kChannel, kWidth };
/// Softmax along one axis; slices along the other axes are independent.
Var softmax(Var x, Axis axis);

// Pooling.
/// (C,H,W) -> (C,1,1) spatial mean.
Var global_avg_pool(Var x);
/// (C,H,W) -> (1,H,W) mean over channels.
Var channel_mean(Var x);
/// (C,H,W) -> (1,H,W) max over channels; ties route gradient to the first.
Var channel_max(Var x);
/// k x k window, stride 1, same-size output with edge replication. k odd.
Var avg_pool(Var x, int k);
Var max_pool(Var x, int k);

// Resampling.
/// Bilinear resize (half-pixel centres, edge clamped).
Var resize_bilinear(Var x, int h, int w);
/// Bilinear x2.
Var upsample2(Var x);
/// 2x2 average, stride 2. H and W must be even.
Var downsample2(Var x);
/// Zero pad at the bottom/right up to (h, w).
Var pad_to(Var x, int h, int w);
/// Keep the top-left (h, w) window.
Var crop(Var x, int h, int w);
/// (C,H,W) -> (C*b*b, H/b, W/b); channel index is c*b*b + dy*b + dx.
Var space_to_depth(Var x, int block);

// Channel plumbing.
Var concat_channels(std::span<const Var> xs);
Var slice_channels(Var x, int begin, int count);

// Reductions to (1,1,1).
Var sum(Var x);
Var mean(Var x);

}  // namespace sfg::ops

namespace sfg::kernels {

// Plain forward kernels shared by the ops above and by code that never needs
// gradients (frozen encoders, metrics).
double sigmoid(double x);
Tensor resize_bilinear(const Tensor& x, int h, int w);
Tensor box_filter_replicate(const Tensor& x, int k);

}  // namespace sfg::kernels
