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

#include "quban/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "quban/error.hpp"
#include "quban/sq.hpp"

namespace quban {

namespace {

constexpr double kMaxNormalized = 0x1.0p62;

}  // namespace

void QuantizerConfig::Validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kNonFinite, "epsilon and sigma must be finite");
  }
  if (epsilon <= 0.0 || sigma <= 0.0) {
    throw Error(ErrorCode::kNonPositiveM, "epsilon and sigma must be > 0");
  }
}

double QuantizerConfig::DrawM(RngStream& rng) const {
  double x = 1.0;
  if (x_sampler) {
    x = x_sampler(rng);
    if (!std::isfinite(x) || std::abs(x) < 1.0) {
      throw Error(ErrorCode::kOutOfRange, "X_t must satisfy |X_t| >= 1");
    }
  }
  // M_t must be positive; a negative X_t only flips the grid orientation,
  // which the codec does not need.
  return epsilon * sigma * std::abs(x);
}

std::uint64_t LadderValue(unsigned index) {
  if (index == 0 || index > kMaxLadderIndex) {
    throw Error(ErrorCode::kMalformedFrame,
                "ladder index " + std::to_string(index) + " out of range");
  }
  return index == 1 ? 0 : std::uint64_t{1} << (index - 2);
}

int ResidualWidth(std::uint64_t ladder) {
  return std::max(1, static_cast<int>(std::bit_width(ladder)));
}

QubanFrame QubanFrame::Central(int normalized) {
  QubanFrame f;
  f.code = static_cast<CaseCode>(normalized - kCentralMin);
  return f;
}

QubanFrame QubanFrame::Boundary(bool positive) {
  QubanFrame f;
  f.code = positive ? CaseCode::kOutPos : CaseCode::kOutNeg;
  return f;
}

QubanFrame QubanFrame::Tail(bool positive, unsigned ladder_index,
                            std::uint64_t residual) {
  QubanFrame f = Boundary(positive);
  f.flag = true;
  f.ladder_index = ladder_index;
  f.residual = residual;
  return f;
}

int QubanFrame::bit_count() const {
  int bits = kCaseBits;
  if (has_flag()) ++bits;
  if (has_tail()) bits += static_cast<int>(ladder_index) + residual_width();
  return bits;
}

void QubanFrame::WriteTo(BitString& out) const {
  out.AppendFixed(static_cast<std::uint64_t>(code), kCaseBits);
  if (!has_flag()) return;
  out.Append(flag);
  if (!flag) return;
  for (unsigned i = 1; i < ladder_index; ++i) out.Append(false);
  out.Append(true);
  out.AppendFixed(residual, residual_width());
}

BitString QubanFrame::ToBits() const {
  BitString bits;
  WriteTo(bits);
  return bits;
}

QubanFrame QubanFrame::ReadFrom(BitReader& in) {
  try {
    QubanFrame f;
    f.code = static_cast<CaseCode>(in.ReadFixed(kCaseBits));
    if (!f.has_flag()) return f;
    f.flag = in.ReadBit();
    if (!f.flag) return f;
    unsigned index = 1;
    while (!in.ReadBit()) {
      if (++index > kMaxLadderIndex) {
        throw Error(ErrorCode::kMalformedFrame, "unary ladder index too long");
      }
    }
    f.ladder_index = index;
    const std::uint64_t ladder = LadderValue(index);
    f.residual = in.ReadFixed(ResidualWidth(ladder));
    if (f.residual > std::max<std::uint64_t>(ladder, 1)) {
      throw Error(ErrorCode::kMalformedFrame,
                  "residual " + std::to_string(f.residual) +
                      " exceeds its grid for ladder " + std::to_string(ladder));
    }
    return f;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOutOfBits) {
      throw Error(ErrorCode::kMalformedFrame, "truncated frame");
    }
    throw;
  }
}

QubanFrame QubanEncode(double r, double mu_hat, double m, RngStream& rng,
                       CodecScratch* scratch) {
  if (!std::isfinite(m) || !std::isfinite(r) || !std::isfinite(mu_hat)) {
    throw Error(ErrorCode::kNonFinite, "encoder inputs must be finite");
  }
  if (m <= 0.0) throw Error(ErrorCode::kNonPositiveM, "M must be > 0");

  CodecScratch s;
  s.center = std::floor(mu_hat / m);
  s.normalized = r / m - s.center;
  if (!(std::abs(s.normalized) < kMaxNormalized)) {
    throw Error(ErrorCode::kOutOfRange, "reward too far from the center");
  }

  QubanFrame frame;
  if (s.normalized >= -kNegBoundary && s.normalized <= kPosBoundary) {
    const std::int64_t q = StochasticRound(s.normalized, rng);
    if (q == kPosBoundary) {
      frame = QubanFrame::Boundary(true);
    } else if (q == -kNegBoundary) {
      frame = QubanFrame::Boundary(false);
    } else {
      frame = QubanFrame::Central(static_cast<int>(q));
    }
  } else {
    s.tail = true;
    s.sign = s.normalized > 0 ? 1 : -1;
    s.boundary = s.sign > 0 ? kPosBoundary : kNegBoundary;
    s.excess = std::abs(s.normalized) - s.boundary;
    unsigned index = 1;
    if (s.excess >= 1.0) {
      const int exponent = std::ilogb(s.excess);
      s.ladder = std::uint64_t{1} << exponent;
      index = static_cast<unsigned>(exponent) + 2;
    }
    // Exact: ladder <= excess < 2 * ladder.
    s.residual = s.excess - static_cast<double>(s.ladder);
    s.residual_q = StochasticRound(s.residual, rng);
    frame = QubanFrame::Tail(s.sign > 0, index,
                             static_cast<std::uint64_t>(s.residual_q));
  }
  if (scratch != nullptr) *scratch = s;
  return frame;
}

std::int64_t DecodeNormalized(const QubanFrame& frame) {
  if (!frame.has_flag()) {
    return static_cast<std::int64_t>(frame.code) + kCentralMin;
  }
  const std::int64_t boundary =
      frame.sign() > 0 ? kPosBoundary : kNegBoundary;
  if (!frame.has_tail()) return frame.sign() * boundary;
  const auto magnitude = static_cast<std::int64_t>(frame.residual) +
                         static_cast<std::int64_t>(frame.ladder()) + boundary;
  return frame.sign() * magnitude;
}

double DecodeTailFormula(const QubanFrame& frame, double mu_hat, double m,
                         const DecodeOffsets& offsets) {
  if (!frame.has_tail()) {
    throw Error(ErrorCode::kMalformedFrame,
                "closed-form decode applies to tail frames only");
  }
  const double center = std::floor(mu_hat / m);
  const double magnitude = static_cast<double>(frame.residual) +
                           static_cast<double>(frame.ladder()) +
                           offsets.sign_offset;
  return (frame.sign() * magnitude + offsets.shift + center) * m;
}

double QubanDecode(const QubanFrame& frame, double mu_hat, double m,
                   const DecodeOffsets& offsets) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::kNonPositiveM, "M must be finite and > 0");
  }
  if (frame.has_tail()) return DecodeTailFormula(frame, mu_hat, m, offsets);
  const double center = std::floor(mu_hat / m);
  return (static_cast<double>(DecodeNormalized(frame)) + center) * m;
}

int InstantaneousBound(std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::kBadRange, "horizon must be >= 2");
  const double inner = 4.0 * std::log2(static_cast<double>(n));
  const double log_inner = std::log2(inner);
  return 4 + static_cast<int>(std::ceil(log_inner)) +
         static_cast<int>(std::ceil(std::log2(log_inner)));
}

}  // namespace quban
