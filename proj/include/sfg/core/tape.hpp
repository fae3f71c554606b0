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

#include <deque>
#include <functional>
#include <initializer_list>
#include <string>
#include <unordered_map>
#include <vector>

#include "sfg/core/params.hpp"
#include "sfg/core/tensor.hpp"

namespace sfg {

class Tape;

/// Handle to a value recorded on a Tape. Cheap to copy; valid as long as the
/// tape lives.
class Var {
 public:
  Var() = default;

  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }
  int id() const { return id_; }
  Tape& tape() const { return *tape_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

/// Define-by-run reverse-mode tape. Every forward pass builds a fresh tape;
/// `backward` walks the recorded nodes in reverse creation order and adds the
/// resulting leaf gradients into the bound ParamStore entries.
class Tape {
 public:
  /// Propagates grad(node) into grad(inputs of node).
  using BackwardFn = std::function<void(Tape& tape, int node)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Tensor value);
  /// Leaf bound to `param`; one node per parameter per tape.
  Var parameter(Param& param);

  /// Appends an op node. `fn` may be empty for ops that never need gradients.
  Var record(const char* op, Tensor value, std::initializer_list<Var> inputs,
             BackwardFn fn);
  Var record(const char* op, Tensor value, const std::vector<Var>& inputs,
             BackwardFn fn);

  const Tensor& value(int id) const { return nodes_[id].value; }
  const Tensor& grad(int id) const { return nodes_[id].grad; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }
  /// Gradient buffer of `id`, zero-allocated on first access.
  Tensor& grad_buffer(int id);
  const char* op(int id) const { return nodes_[id].op; }
  std::size_t size() const { return nodes_.size(); }

  /// Runs reverse accumulation from a scalar node. Leaf gradients are added
  /// (not assigned) into the ParamStore, so two calls accumulate twice.
  void backward(Var loss, double seed = 1.0);

  /// Node ids whose backward function ran during the last `backward`, in
  /// execution order.
  const std::vector<int>& backward_trace() const { return trace_; }

 private:
  struct Node {
    const char* op = "";
    Tensor value;
    Tensor grad;
    std::vector<int> inputs;
    BackwardFn backward;
    Param* param = nullptr;
    bool requires_grad = false;
  };

  Var push(Node node);

  std::deque<Node> nodes_;
  std::unordered_map<const Param*, int> param_nodes_;
  std::vector<int> trace_;
};

}  // namespace sfg
