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

#include "quban/bitstring.hpp"

#include "quban/error.hpp"

namespace quban {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfBits: return "OutOfBits";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kBadIndex: return "BadIndex";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kNonPositiveM: return "NonPositiveM";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kEmptyActionSet: return "EmptyActionSet";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kBadAction: return "BadAction";
    case ErrorCode::kBadQuadrature: return "BadQuadrature";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

BitString BitString::FromBinary(std::string_view binary) {
  BitString out;
  for (char c : binary) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kMalformedFrame,
                  "binary literal contains '" + std::string(1, c) + "'");
    }
    out.Append(c == '1');
  }
  return out;
}

void BitString::AppendFixed(std::uint64_t value, int width) {
  if (width < 0 || width > 64) {
    throw Error(ErrorCode::kBadRange, "field width must be in [0, 64]");
  }
  for (int i = width - 1; i >= 0; --i) {
    Append(((value >> i) & 1U) != 0);
  }
}

void BitString::Append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::pair<std::uint64_t, std::size_t> BitString::Read(std::size_t cursor,
                                                      int count) const {
  if (count < 0 || count > 64) {
    throw Error(ErrorCode::kBadRange, "read width must be in [0, 64]");
  }
  if (cursor > bits_.size() ||
      static_cast<std::size_t>(count) > bits_.size() - cursor) {
    throw Error(ErrorCode::kOutOfBits,
                "read of " + std::to_string(count) + " bits at " +
                    std::to_string(cursor) + " past length " +
                    std::to_string(bits_.size()));
  }
  std::uint64_t value = 0;
  for (int i = 0; i < count; ++i) {
    value = (value << 1) | bits_[cursor + static_cast<std::size_t>(i)];
  }
  return {value, cursor + static_cast<std::size_t>(count)};
}

std::string BitString::ToBinary() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

std::string BitString::ToHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < bits_.size()) nibble |= bits_[i + j];
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

std::uint64_t BitReader::ReadFixed(int count) {
  auto [value, next] = bits_->Read(cursor_, count);
  cursor_ = next;
  return value;
}

}  // namespace quban
