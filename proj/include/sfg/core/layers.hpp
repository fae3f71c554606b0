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

#include "sfg/core/ops.hpp"
#include "sfg/core/params.hpp"
#include "sfg/core/tape.hpp"

namespace sfg {

/// A tape plus the parameter store its layers draw from. Parameters are
/// created lazily on first use under `<name>.weight` / `<name>.bias`.
class Context {
 public:
  Context(Tape& tape, ParamStore& params) : tape_(tape), params_(params) {}

  Tape& tape() { return tape_; }
  ParamStore& params() { return params_; }

  Var constant(Tensor t) { return tape_.constant(std::move(t)); }
  Var param(const std::string& name, Shape shape, const Init& init);

  /// 1x1 channel projection (dense matrix on a (C,1,1) vector).
  Var linear_project(Var x, const std::string& name, int out_channels,
                     bool bias = true);
  Var conv(Var x, const std::string& name, int out_channels,
           const ops::ConvSpec& spec, bool bias = true);

 private:
  Tape& tape_;
  ParamStore& params_;
};

}  // namespace sfg
