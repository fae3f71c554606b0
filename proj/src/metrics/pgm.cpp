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

#include "sfg/metrics/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sfg/core/errors.hpp"

namespace sfg::metrics {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::vector<unsigned char>& bytes) : b_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else if (std::isspace(b_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > (1L << 24)) throw FormatError(std::string("pgm: ") + what + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw FormatError(std::string("pgm: expected ") + what, start);
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }
  std::size_t size() const { return b_.size(); }
  unsigned char at(std::size_t i) const { return b_[i]; }

 private:
  const std::vector<unsigned char>& b_;
  std::size_t pos_ = 0;
};

}  // namespace

Tensor read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw FormatError("pgm: bad magic in " + path.string(), 0);
  }
  const bool binary = bytes[1] == '5';
  Cursor c(bytes);
  c.advance();
  c.advance();
  const long w = c.number("width");
  const long h = c.number("height");
  const long maxval = c.number("maxval");
  if (w <= 0 || h <= 0) throw FormatError("pgm: empty image", c.pos());
  if (maxval <= 0 || maxval > 255) throw FormatError("pgm: maxval must be 1..255", c.pos());
  Tensor img(Shape{1, static_cast<int>(h), static_cast<int>(w)});
  if (binary) {
    if (c.pos() >= c.size() || !std::isspace(c.at(c.pos()))) {
      throw FormatError("pgm: missing separator before pixel data", c.pos());
    }
    const std::size_t start = c.pos() + 1;
    const std::size_t need = static_cast<std::size_t>(w) * h;
    if (bytes.size() < start + need) throw FormatError("pgm: truncated pixel data", bytes.size());
    for (std::size_t i = 0; i < need; ++i) img[i] = bytes[start + i] / static_cast<double>(maxval);
  } else {
    for (std::size_t i = 0; i < img.size(); ++i) {
      const long v = c.number("pixel");
      if (v > maxval) throw FormatError("pgm: pixel above maxval", c.pos());
      img[i] = v / static_cast<double>(maxval);
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Tensor& img) {
  if (img.shape().c != 1) throw ShapeError("pgm needs a single channel, got " + to_string(img.shape()));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "P5\n" << img.shape().w << ' ' << img.shape().h << "\n255\n";
  std::vector<unsigned char> px(img.size());
  for (std::size_t i = 0; i < img.size(); ++i)
    px[i] = static_cast<unsigned char>(std::lround(std::clamp(img[i], 0.0, 1.0) * 255.0));
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace sfg::metrics
