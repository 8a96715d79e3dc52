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

#include <cstdint>
#include <random>

namespace quban {

// Deterministic random stream keyed by (seed, stream_id).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The distribution code below is written out by hand because the
// standard distributions are implementation-defined, and every CSV this
// library emits must be byte-identical across toolchains.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  // Independent stream sharing this stream's seed.
  RngStream Substream(std::uint64_t stream_id) const {
    return RngStream(seed_, stream_id);
  }

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on {0, ..., n-1}; n >= 1.
  std::uint64_t UniformIndex(std::uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Standard normal (Box-Muller, both variates used).
  double Normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Mixes a master seed and an index into a new 64-bit seed (SplitMix64).
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index);

}  // namespace quban
