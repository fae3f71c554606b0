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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfg/core/tensor.hpp"

namespace sfg {

struct Param {
  Tensor value;
  Tensor grad;
};

/// How a parameter is filled on first use.
struct Init {
  enum class Kind { kUniformFanIn, kConstant };
  Kind kind = Kind::kUniformFanIn;
  int fan_in = 1;
  double value = 0.0;

  /// Uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)].
  static Init uniform(int fan_in) { return {Kind::kUniformFanIn, fan_in, 0.0}; }
  static Init constant(double v) { return {Kind::kConstant, 1, v}; }
  static Init zeros() { return constant(0.0); }
};

/// Named learnable parameters with one gradient buffer each. Initial values
/// depend only on (seed, name, shape), never on creation order.
///
/// Concurrent readers are fine once every parameter exists; creation and
/// gradient writes need exclusive access.
class ParamStore {
 public:
  explicit ParamStore(std::uint64_t seed = 0) : seed_(seed) {}

  /// Returns the named parameter, creating it on first use. Throws ShapeError
  /// when it already exists with a different shape.
  Param& get_or_create(const std::string& name, Shape shape, const Init& init);

  Param& at(const std::string& name);
  const Param& at(const std::string& name) const;
  bool contains(const std::string& name) const { return params_.count(name) != 0; }

  /// Overwrites (or creates) a parameter value; the gradient is reset.
  void set(const std::string& name, Tensor value);

  void zero_grad();
  std::vector<std::string> names() const;
  std::size_t size() const { return params_.size(); }
  std::size_t scalar_count() const;
  std::uint64_t seed() const { return seed_; }

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  bool operator==(const ParamStore& o) const;

 private:
  std::uint64_t seed_;
  std::map<std::string, Param> params_;
};

/// Deterministic initial value for a parameter.
Tensor initial_value(std::uint64_t seed, const std::string& name, Shape shape,
                     const Init& init);

}  // namespace sfg
