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
#include <functional>

#include "quban/bitstring.hpp"
#include "quban/rng.hpp"

namespace quban {

// Granularity parameters. M_t = epsilon * sigma * X_t.
struct QuantizerConfig {
  double epsilon = 1.0;
  double sigma = 1.0;  // known (or estimated) subgaussian scale
  // Draws X_t with |X_t| >= 1. Left empty, X_t is the constant 1.
  std::function<double(RngStream&)> x_sampler;

  void Validate() const;
  double DrawM(RngStream& rng) const;
};

// 3-bit case code. Codes 0..5 carry the central values -2..3; the two
// remaining codes mark values at or beyond the positive/negative boundary.
enum class CaseCode : std::uint8_t {
  kCentralFirst = 0,  // normalized value -2
  kCentralLast = 5,   // normalized value 3
  kOutNeg = 6,
  kOutPos = 7,
};

inline constexpr int kCaseBits = 3;
inline constexpr int kCentralMin = -2;
inline constexpr int kCentralMax = 3;
inline constexpr int kPosBoundary = 4;  // |a| for the positive tail
inline constexpr int kNegBoundary = 3;  // |a| for the negative tail
// Ladder indices past this would overflow the 64-bit residual.
inline constexpr unsigned kMaxLadderIndex = 63;

// Ladder {0, 1, 2, 4, 8, ...}; index is 1-based.
std::uint64_t LadderValue(unsigned index);
// Residual field width: max(1, ceil(log2(ladder + 1))).
int ResidualWidth(std::uint64_t ladder);

// One encoded reward. Wire layout, MSB first:
//   [3-bit case][1-bit flag if OUT_*][unary ladder index][residual]
// where the last two fields are present only when the flag is 1, the unary
// field is (I-1) zeros then a one, and the residual is ResidualWidth(l) bits.
struct QubanFrame {
  CaseCode code = CaseCode::kCentralFirst;
  bool flag = false;
  unsigned ladder_index = 0;
  std::uint64_t residual = 0;

  static QubanFrame Central(int normalized);
  static QubanFrame Boundary(bool positive);
  static QubanFrame Tail(bool positive, unsigned ladder_index,
                         std::uint64_t residual);

  bool has_flag() const noexcept {
    return code == CaseCode::kOutNeg || code == CaseCode::kOutPos;
  }
  bool has_tail() const noexcept { return has_flag() && flag; }
  int sign() const noexcept { return code == CaseCode::kOutNeg ? -1 : 1; }
  std::uint64_t ladder() const { return LadderValue(ladder_index); }
  int residual_width() const { return ResidualWidth(ladder()); }

  int bit_count() const;
  void WriteTo(BitString& out) const;
  BitString ToBits() const;
  // Consumes exactly bit_count() bits. Throws kMalformedFrame on a
  // truncated or out-of-range field.
  static QubanFrame ReadFrom(BitReader& in);

  friend bool operator==(const QubanFrame&, const QubanFrame&) = default;
};

// Intermediate encoder values, exposed for tests and transcripts.
struct CodecScratch {
  double center = 0.0;      // floor(mu_hat / M)
  double normalized = 0.0;  // r / M - center
  bool tail = false;
  int sign = 1;
  int boundary = 0;          // |a|
  double excess = 0.0;       // |normalized| - |a|
  std::uint64_t ladder = 0;  // largest ladder value <= excess
  double residual = 0.0;     // excess - ladder
  std::int64_t residual_q = 0;
};

// Agent side. Sees only (r, mu_hat, M) and its private randomness.
QubanFrame QubanEncode(double r, double mu_hat, double m, RngStream& rng,
                       CodecScratch* scratch = nullptr);

// Constants of the learner's closed-form tail decode
// r_hat = (s (e_q + l + sign_offset) + shift + floor(mu_hat / M)) M.
// Changing them is only useful for fault-injection tests.
struct DecodeOffsets {
  double sign_offset = 3.5;
  double shift = 0.5;
};

// Normalized value carried by the frame, reconstructed case by case:
// central codes by lookup, tails as s (e_q + l + |a|).
std::int64_t DecodeNormalized(const QubanFrame& frame);

// Closed-form decode, valid for every frame with a tail.
double DecodeTailFormula(const QubanFrame& frame, double mu_hat, double m,
                         const DecodeOffsets& offsets = {});

// Learner side: table lookup for short frames, closed form for tails.
double QubanDecode(const QubanFrame& frame, double mu_hat, double m,
                   const DecodeOffsets& offsets = {});

inline int FrameBitCount(const QubanFrame& frame) { return frame.bit_count(); }

// 4 + ceil(log2(4 log2 n)) + ceil(log2 log2(4 log2 n)), n >= 2.
int InstantaneousBound(std::int64_t n);

}  // namespace quban
