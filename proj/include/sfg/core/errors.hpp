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
#include <stdexcept>
#include <string>

namespace sfg {

/// Base of every error raised by the library. `exit_code()` is the process
/// status the CLI reports for it: 1 contract/shape, 2 format, 3 divergence
/// or failed check.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, int exit_code = 1)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what)
      : Error("contract error: " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error("input error: " + what) {}
};

/// Inverse transform of a spectrum that is not Hermitian-symmetric.
class SymmetryError : public Error {
 public:
  explicit SymmetryError(const std::string& what)
      : Error("symmetry violation: " + what) {}
};

class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& what)
      : Error("alignment input error: " + what) {}
};

/// Malformed or truncated file. `offset()` is the byte position where
/// decoding failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : Error("format error at byte offset " + std::to_string(offset) + ": " +
                  what,
              2),
        offset_(offset) {}
  explicit FormatError(const std::string& what)
      : Error("format error: " + what, 2), offset_(0) {}
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what)
      : Error("divergence: " + what, 3) {}
};

class CheckFailure : public Error {
 public:
  explicit CheckFailure(const std::string& what)
      : Error("check failed: " + what, 3) {}
};

}  // namespace sfg
