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

#include "quban/sq.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "quban/error.hpp"

namespace quban {

std::int64_t StochasticRound(double x, RngStream& rng) {
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  const auto base = static_cast<std::int64_t>(floor_x);
  if (frac == 0.0) return base;
  return rng.Uniform() < frac ? base + 1 : base;
}

LevelGrid::LevelGrid(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 2) {
    throw Error(ErrorCode::kBadRange, "a level grid needs at least 2 levels");
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i])) {
      throw Error(ErrorCode::kNonFinite, "grid level is not finite");
    }
    if (i > 0 && !(levels_[i - 1] < levels_[i])) {
      throw Error(ErrorCode::kBadRange, "grid levels must strictly increase");
    }
  }
  index_width_ = std::max(1, static_cast<int>(std::bit_width(levels_.size() - 1)));
}

double LevelGrid::max_spacing() const noexcept {
  double out = 0.0;
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    out = std::max(out, levels_[i] - levels_[i - 1]);
  }
  return out;
}

std::size_t LevelGrid::LowerIndex(double x) const {
  // First level strictly greater than x, minus one, capped at m-2.
  auto it = std::upper_bound(levels_.begin(), levels_.end(), x);
  auto idx = static_cast<std::size_t>(it - levels_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, levels_.size() - 2);
}

LevelGrid MakeUniformGrid(double lo, double hi, int bits) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kBadRange, "uniform grid needs finite lo < hi");
  }
  if (bits < 1 || bits > 24) {
    throw Error(ErrorCode::kBadRange, "uniform grid bits must be in [1, 24]");
  }
  const std::size_t m = std::size_t{1} << bits;
  std::vector<double> levels(m);
  const double step = (hi - lo) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    levels[i] = lo + step * static_cast<double>(i);
  }
  levels.back() = hi;
  return LevelGrid(std::move(levels));
}

std::size_t SqEncode(double x, const LevelGrid& grid, RngStream& rng) {
  if (!std::isfinite(x)) throw Error(ErrorCode::kNonFinite, "SQ input");
  if (x < grid.lo() || x > grid.hi()) {
    throw Error(ErrorCode::kOutOfRange,
                "SQ input " + std::to_string(x) + " outside [" +
                    std::to_string(grid.lo()) + ", " +
                    std::to_string(grid.hi()) + "]");
  }
  const std::size_t i = grid.LowerIndex(x);
  const double below = grid.level(i);
  const double above = grid.level(i + 1);
  if (x == below) return i;
  if (x == above) return i + 1;
  const double p_upper = (x - below) / (above - below);
  return rng.Uniform() < p_upper ? i + 1 : i;
}

double SqDecode(std::size_t index, const LevelGrid& grid) {
  if (index >= grid.size()) {
    throw Error(ErrorCode::kBadIndex,
                "level index " + std::to_string(index) + " outside grid of " +
                    std::to_string(grid.size()));
  }
  return grid.level(index);
}

}  // namespace quban
