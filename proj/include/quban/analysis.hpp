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
#include <string>
#include <vector>

#include "quban/codec.hpp"
#include "quban/rng.hpp"

namespace quban {

// Unbiased unit-grid stochastic quantization of a standard Gaussian, with
// prefix code lengths 1, 2, 3, ... given to the levels in decreasing order
// of probability.
struct LowerBoundReport {
  std::vector<int> levels;               // z, in code-length order
  std::vector<double> probabilities;     // p_z
  std::vector<int> code_lengths;         // 1, 2, 3, ...
  double total_mass = 0.0;
  double expected_length = 0.0;
  // Same ordering, with the tail correction terms subtracted from each
  // level's triangular weight (clamped at zero).
  double tail_corrected_expected_length = 0.0;
};

// Trapezoidal quadrature on [-8, 8]. Throws kBadQuadrature if step is not
// in (0, 0.01], kBadRange if z_max < 3.
LowerBoundReport GaussianUnitGridBound(int z_max, double step = 1e-4);

struct CheckResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// One (r, mu_hat, M) encoder input.
struct CodecInput {
  double r = 0.0;
  double mu_hat = 0.0;
  double m = 1.0;
};

// Random encoder input; about half land in a tail, with |normalized| up to
// max_normalized.
CodecInput FuzzCodecInput(RngStream& rng, double max_normalized = 1e3);

struct MonteCarloMean {
  double mean = 0.0;
  double stddev = 0.0;  // sample stddev of the decoded values
  std::int64_t draws = 0;
  // 5 stddev / sqrt(draws)
  double half_width() const;
};

MonteCarloMean DecodedMean(const CodecInput& in, std::int64_t draws,
                           RngStream& rng, const DecodeOffsets& offsets = {});

struct ValidationOptions {
  int unbiased_inputs = 50;
  std::int64_t unbiased_draws = 1'000'000;
  std::int64_t fuzz_cycles = 1'000'000;
  int shift_pairs = 20;
  int shift_centers = 100;
  std::int64_t shift_draws = 100'000;
  std::int64_t variance_draws = 1'000'000;
  std::uint64_t seed = 20260401;
  DecodeOffsets offsets;  // fault injection

  // N = 1e4 everywhere and 20 centers per shift pair.
  static ValidationOptions Quick();
};

// |mean - r| <= 5 M / sqrt(N) for every fuzzed input.
CheckResult CheckUnbiasedness(const ValidationOptions& opt);
// |r_hat - r| <= M on every cycle.
CheckResult CheckBoundedError(const ValidationOptions& opt);
// Decoded support is {M floor(r/M), M ceil(r/M)} for every mu_hat, and the
// upper frequency is within 4 binomial sigma of frac(r/M).
CheckResult CheckShiftInvariance(const ValidationOptions& opt);
// Frames survive serialization and consume exactly their length.
CheckResult CheckRoundTrip(const ValidationOptions& opt);
// Two concatenated frames decode back to back.
CheckResult CheckPrefixFree(const ValidationOptions& opt);
// Closed-form tail decode equals the case-by-case reconstruction.
CheckResult CheckFormulaAgreement(const ValidationOptions& opt);
// E[(r_hat - mu)^2] <= (1 + eps^2) sigma^2 for Gaussian rewards, 5% slack.
CheckResult CheckVarianceProxy(const ValidationOptions& opt);
// Expected length of the Gaussian unit-grid code >= 2.2 bits.
CheckResult CheckLowerBound();

ValidationReport CodecValidationSuite(const ValidationOptions& opt);

}  // namespace quban
