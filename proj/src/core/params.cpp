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

#include "sfg/core/params.hpp"

#include <cmath>

#include "sfg/core/errors.hpp"
#include "sfg/core/random.hpp"

namespace sfg {

Tensor initial_value(std::uint64_t seed, const std::string& name, Shape shape,
                     const Init& init) {
  Tensor t(shape);
  if (init.kind == Init::Kind::kConstant) {
    t.fill(init.value);
    return t;
  }
  if (init.fan_in <= 0) throw ConfigError("fan_in must be positive for " + name);
  const double bound = 1.0 / std::sqrt(static_cast<double>(init.fan_in));
  const Rng rng(seed, name + to_string(shape));
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = bound * (2.0 * rng.uniform_at(i) - 1.0);
  }
  return t;
}

Param& ParamStore::get_or_create(const std::string& name, Shape shape,
                                 const Init& init) {
  auto it = params_.find(name);
  if (it != params_.end()) {
    if (!(it->second.value.shape() == shape)) {
      throw ShapeError("parameter '" + name + "' exists with shape " +
                       to_string(it->second.value.shape()) + ", requested " +
                       to_string(shape));
    }
    return it->second;
  }
  Param p{initial_value(seed_, name, shape, init), Tensor(shape)};
  return params_.emplace(name, std::move(p)).first->second;
}

Param& ParamStore::at(const std::string& name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("unknown parameter '" + name + "'");
  return it->second;
}

const Param& ParamStore::at(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw ContractError("unknown parameter '" + name + "'");
  return it->second;
}

void ParamStore::set(const std::string& name, Tensor value) {
  auto it = params_.find(name);
  if (it != params_.end() && !(it->second.value.shape() == value.shape())) {
    throw ShapeError("parameter '" + name + "' has shape " +
                     to_string(it->second.value.shape()) + ", got " +
                     to_string(value.shape()));
  }
  const Shape s = value.shape();
  params_[name] = Param{std::move(value), Tensor(s)};
}

void ParamStore::zero_grad() {
  for (auto& [name, p] : params_) p.grad.fill(0.0);
}

std::vector<std::string> ParamStore::names() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (const auto& [name, p] : params_) out.push_back(name);
  return out;
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& [name, p] : params_) n += p.value.size();
  return n;
}

bool ParamStore::operator==(const ParamStore& o) const {
  if (params_.size() != o.params_.size()) return false;
  auto a = params_.begin();
  auto b = o.params_.begin();
  for (; a != params_.end(); ++a, ++b) {
    if (a->first != b->first || !bit_equal(a->second.value, b->second.value)) return false;
  }
  return true;
}

}  // namespace sfg
