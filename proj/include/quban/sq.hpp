// Copyright 2026 The QuBan Authors. All Rights Reserved.
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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "quban/rng.hpp"

namespace quban {

// Randomized rounding of x to floor(x) or floor(x)+1 with
// P(floor(x)+1) = x - floor(x). Integers round to themselves.
std::int64_t StochasticRound(double x, RngStream& rng);

// Strictly increasing finite set of quantization levels, m >= 2.
// Level indices are 0-based on the wire: index_width() bits encode
// {0, ..., m-1}.
class LevelGrid {
 public:
  explicit LevelGrid(std::vector<double> levels);

  std::size_t size() const noexcept { return levels_.size(); }
  int index_width() const noexcept { return index_width_; }
  std::span<const double> levels() const noexcept { return levels_; }
  double level(std::size_t index) const { return levels_[index]; }
  double lo() const noexcept { return levels_.front(); }
  double hi() const noexcept { return levels_.back(); }
  double max_spacing() const noexcept;

  // Index of the largest level <= x, never the last one.
  std::size_t LowerIndex(double x) const;

 private:
  std::vector<double> levels_;
  int index_width_ = 1;
};

// 2^bits levels evenly spaced on [lo, hi], endpoints included.
LevelGrid MakeUniformGrid(double lo, double hi, int bits);

// Unbiased stochastic quantization of x onto the grid. x must lie within
// [lo, hi]; inputs outside are rejected with kOutOfRange, not clipped.
std::size_t SqEncode(double x, const LevelGrid& grid, RngStream& rng);
double SqDecode(std::size_t index, const LevelGrid& grid);

}  // namespace quban
