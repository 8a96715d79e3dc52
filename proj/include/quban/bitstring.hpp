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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace quban {

// Append-only sequence of bits. Multi-bit fields are stored most significant
// bit first.
class BitString {
 public:
  BitString() = default;

  // Parses a string of '0'/'1' characters.
  static BitString FromBinary(std::string_view binary);

  void Append(bool bit) { bits_.push_back(bit ? 1 : 0); }
  // Appends the low `width` bits of `value`, MSB first. width <= 64.
  void AppendFixed(std::uint64_t value, int width);
  void Append(const BitString& other);
  void Clear() { bits_.clear(); }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }

  // Reads `count` bits starting at `cursor` as a big-endian integer and
  // returns it with the advanced cursor. Throws kOutOfBits when the read
  // would pass the end.
  std::pair<std::uint64_t, std::size_t> Read(std::size_t cursor,
                                             int count) const;

  std::string ToBinary() const;
  // Hex digits of the bit string, right-padded with zero bits to a nibble.
  std::string ToHex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Cursor over a BitString; never reads past the end.
class BitReader {
 public:
  explicit BitReader(const BitString& bits, std::size_t cursor = 0)
      : bits_(&bits), cursor_(cursor) {}

  std::uint64_t ReadFixed(int count);
  bool ReadBit() { return ReadFixed(1) != 0; }

  std::size_t position() const noexcept { return cursor_; }
  std::size_t remaining() const noexcept { return bits_->size() - cursor_; }

 private:
  const BitString* bits_;
  std::size_t cursor_;
};

}  // namespace quban
