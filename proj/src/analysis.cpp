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

#include "quban/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "quban/error.hpp"

namespace quban {

namespace {

constexpr double kQuadratureHalfRange = 8.0;

double StdNormalPdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// sum_{j>=1} j exp(-2 (base + sign * j)^2)
double TailCorrection(double base, int sign) {
  double sum = 0.0;
  for (int j = 1; j <= 64; ++j) {
    const double u = base + sign * j;
    sum += j * std::exp(-2.0 * u * u);
  }
  return sum;
}

std::string Describe(const CodecInput& in) {
  std::ostringstream os;
  os.precision(10);
  os << "r=" << in.r << " mu_hat=" << in.mu_hat << " M=" << in.m;
  return os.str();
}

CheckResult Finish(std::string name, bool passed, double statistic,
                   double tolerance, std::string detail = {}) {
  return CheckResult{std::move(name), passed, statistic, tolerance,
                     std::move(detail)};
}

}  // namespace

LowerBoundReport GaussianUnitGridBound(int z_max, double step) {
  if (!(step > 0.0) || step > 0.01) {
    throw Error(ErrorCode::kBadQuadrature, "quadrature step must be in (0, 0.01]");
  }
  if (z_max < 3) throw Error(ErrorCode::kBadRange, "z_max must be >= 3");

  const auto intervals =
      static_cast<std::int64_t>(std::llround(2.0 * kQuadratureHalfRange / step));
  const double h = 2.0 * kQuadratureHalfRange / static_cast<double>(intervals);
  auto grid_x = [&](std::int64_t i) {
    return -kQuadratureHalfRange + h * static_cast<double>(i);
  };

  // Trapezoid of f over [-8, 8] restricted to [lo, hi] (f vanishes outside).
  auto integrate = [&](double lo, double hi, auto&& f) {
    const auto first = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(std::floor((lo + kQuadratureHalfRange) / h)));
    const auto last = std::min<std::int64_t>(
        intervals,
        static_cast<std::int64_t>(std::ceil((hi + kQuadratureHalfRange) / h)));
    double sum = 0.0;
    for (std::int64_t i = first; i <= last; ++i) {
      const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
      sum += w * f(grid_x(i));
    }
    return sum * h;
  };

  LowerBoundReport report;
  // Candidate order 0, 1, -1, 2, -2, ... so that a stable sort keeps the
  // positive level first among equal probabilities.
  std::vector<int> order{0};
  for (int z = 1; z <= z_max; ++z) {
    order.push_back(z);
    order.push_back(-z);
  }
  std::vector<std::pair<double, double>> mass(order.size());  // (plain, corrected)
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double z = order[i];
    const double plain = integrate(z - 1.0, z + 1.0, [&](double x) {
      return std::max(0.0, 1.0 - std::abs(x - z)) * StdNormalPdf(x);
    });
    const double corrected = integrate(z - 1.0, z + 1.0, [&](double x) {
      const double tri = std::max(0.0, 1.0 - std::abs(x - z));
      if (tri == 0.0) return 0.0;
      const double corr = x < z ? TailCorrection(std::ceil(x), 1)
                                : TailCorrection(std::floor(x), -1);
      return std::max(0.0, tri - corr) * StdNormalPdf(x);
    });
    mass[i] = {plain, corrected};
  }
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = i;
  std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    return mass[a].first > mass[b].first;
  });
  for (std::size_t pos = 0; pos < rank.size(); ++pos) {
    const std::size_t i = rank[pos];
    const int length = static_cast<int>(pos) + 1;
    report.levels.push_back(order[i]);
    report.probabilities.push_back(mass[i].first);
    report.code_lengths.push_back(length);
    report.total_mass += mass[i].first;
    report.expected_length += length * mass[i].first;
    report.tail_corrected_expected_length += length * mass[i].second;
  }
  return report;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

CodecInput FuzzCodecInput(RngStream& rng, double max_normalized) {
  CodecInput in;
  in.m = std::exp(std::log(0.05) + rng.Uniform() * std::log(400.0));
  in.mu_hat = in.m * (rng.Uniform() * 200.0 - 100.0);
  double offset = 0.0;
  if (rng.Uniform() < 0.5) {
    offset = -4.5 + 10.0 * rng.Uniform();
  } else {
    const double top = std::log10(max_normalized);
    const double magnitude = std::pow(10.0, 0.5 + rng.Uniform() * (top - 0.5));
    offset = rng.Uniform() < 0.5 ? -magnitude : magnitude;
  }
  in.r = in.mu_hat + offset * in.m;
  return in;
}

double MonteCarloMean::half_width() const {
  return draws > 0 ? 5.0 * stddev / std::sqrt(static_cast<double>(draws)) : 0.0;
}

MonteCarloMean DecodedMean(const CodecInput& in, std::int64_t draws,
                           RngStream& rng, const DecodeOffsets& offsets) {
  MonteCarloMean out;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < draws; ++i) {
    const QubanFrame frame = QubanEncode(in.r, in.mu_hat, in.m, rng);
    const double v = QubanDecode(frame, in.mu_hat, in.m, offsets);
    ++out.draws;
    const double delta = v - out.mean;
    out.mean += delta / static_cast<double>(out.draws);
    m2 += delta * (v - out.mean);
  }
  out.stddev = out.draws > 1
                   ? std::sqrt(m2 / static_cast<double>(out.draws - 1))
                   : 0.0;
  return out;
}

ValidationOptions ValidationOptions::Quick() {
  ValidationOptions opt;
  opt.unbiased_draws = 10'000;
  opt.fuzz_cycles = 10'000;
  opt.shift_draws = 10'000;
  opt.variance_draws = 10'000;
  // 400 rather than 2000 separate 4-sigma tests keeps the family-wise false
  // alarm rate of the smoke run near 2.5%.
  opt.shift_centers = 20;
  return opt;
}

CheckResult CheckUnbiasedness(const ValidationOptions& opt) {
  RngStream inputs(opt.seed, 101);
  RngStream draws(opt.seed, 102);
  double worst = 0.0;
  std::string detail;
  const double root_n = std::sqrt(static_cast<double>(opt.unbiased_draws));
  for (int i = 0; i < opt.unbiased_inputs; ++i) {
    const CodecInput in = FuzzCodecInput(inputs);
    const MonteCarloMean mc = DecodedMean(in, opt.unbiased_draws, draws, opt.offsets);
    const double z = std::abs(mc.mean - in.r) / (in.m / root_n);
    if (z > worst) {
      worst = z;
      detail = Describe(in);
    }
  }
  return Finish("unbiasedness", worst <= 5.0, worst, 5.0, detail);
}

CheckResult CheckBoundedError(const ValidationOptions& opt) {
  RngStream rng(opt.seed, 103);
  std::int64_t violations = 0;
  std::string detail;
  for (std::int64_t i = 0; i < opt.fuzz_cycles; ++i) {
    const CodecInput in = FuzzCodecInput(rng);
    const QubanFrame frame = QubanEncode(in.r, in.mu_hat, in.m, rng);
    const double v = QubanDecode(frame, in.mu_hat, in.m, opt.offsets);
    if (!(std::abs(v - in.r) <= in.m)) {
      if (violations++ == 0) detail = Describe(in);
    }
  }
  return Finish("bounded_error", violations == 0,
                static_cast<double>(violations), 0.0, detail);
}

CheckResult CheckShiftInvariance(const ValidationOptions& opt) {
  RngStream setup(opt.seed, 104);
  RngStream rng(opt.seed, 105);
  double worst = 0.0;
  std::int64_t off_support = 0;
  std::string detail;
  for (int p = 0; p < opt.shift_pairs; ++p) {
    const double m = std::exp(std::log(0.05) + setup.Uniform() * std::log(400.0));
    double r = m * (setup.Uniform() * 200.0 - 100.0);
    double scaled = r / m;
    while (scaled == std::floor(scaled)) {
      r = m * (setup.Uniform() * 200.0 - 100.0);
      scaled = r / m;
    }
    const double lower = m * std::floor(scaled);
    const double upper = m * std::ceil(scaled);
    const double p_upper = scaled - std::floor(scaled);
    for (int c = 0; c < opt.shift_centers; ++c) {
      // Centers up to 200 M away, so some inputs fall in the tails.
      const double mu_hat = r + m * (setup.Uniform() * 400.0 - 200.0);
      std::int64_t ups = 0;
      for (std::int64_t i = 0; i < opt.shift_draws; ++i) {
        const QubanFrame frame = QubanEncode(r, mu_hat, m, rng);
        const double v = QubanDecode(frame, mu_hat, m, opt.offsets);
        if (v == upper) {
          ++ups;
        } else if (v != lower) {
          if (off_support++ == 0) {
            detail = Describe({r, mu_hat, m}) + " decoded off-support";
          }
        }
      }
      const double n = static_cast<double>(opt.shift_draws);
      const double z = std::abs(static_cast<double>(ups) - n * p_upper) /
                       std::sqrt(n * p_upper * (1.0 - p_upper));
      if (z > worst) {
        worst = z;
        if (off_support == 0) detail = Describe({r, mu_hat, m});
      }
    }
  }
  return Finish("shift_invariance", off_support == 0 && worst <= 4.0, worst,
                4.0, detail);
}

CheckResult CheckRoundTrip(const ValidationOptions& opt) {
  RngStream rng(opt.seed, 106);
  std::int64_t failures = 0;
  std::string detail;
  for (std::int64_t i = 0; i < opt.fuzz_cycles; ++i) {
    const CodecInput in = FuzzCodecInput(rng);
    const QubanFrame frame = QubanEncode(in.r, in.mu_hat, in.m, rng);
    const BitString bits = frame.ToBits();
    BitReader reader(bits);
    const QubanFrame back = QubanFrame::ReadFrom(reader);
    const bool ok = back == frame &&
                    reader.position() == static_cast<std::size_t>(frame.bit_count()) &&
                    bits.size() == static_cast<std::size_t>(frame.bit_count()) &&
                    QubanDecode(back, in.mu_hat, in.m, opt.offsets) ==
                        QubanDecode(frame, in.mu_hat, in.m, opt.offsets);
    if (!ok && failures++ == 0) detail = Describe(in);
  }
  return Finish("round_trip", failures == 0, static_cast<double>(failures), 0.0,
                detail);
}

CheckResult CheckPrefixFree(const ValidationOptions& opt) {
  RngStream rng(opt.seed, 107);
  std::int64_t failures = 0;
  std::string detail;
  const std::int64_t pairs = std::max<std::int64_t>(1, opt.fuzz_cycles / 2);
  for (std::int64_t i = 0; i < pairs; ++i) {
    const CodecInput a_in = FuzzCodecInput(rng);
    const CodecInput b_in = FuzzCodecInput(rng);
    const QubanFrame a = QubanEncode(a_in.r, a_in.mu_hat, a_in.m, rng);
    const QubanFrame b = QubanEncode(b_in.r, b_in.mu_hat, b_in.m, rng);
    BitString stream;
    a.WriteTo(stream);
    b.WriteTo(stream);
    BitReader reader(stream);
    const QubanFrame first = QubanFrame::ReadFrom(reader);
    const std::size_t boundary = reader.position();
    const QubanFrame second = QubanFrame::ReadFrom(reader);
    const bool ok = first == a && second == b &&
                    boundary == static_cast<std::size_t>(a.bit_count()) &&
                    reader.remaining() == 0;
    if (!ok && failures++ == 0) detail = Describe(a_in) + " / " + Describe(b_in);
  }
  return Finish("prefix_free", failures == 0, static_cast<double>(failures), 0.0,
                detail);
}

CheckResult CheckFormulaAgreement(const ValidationOptions& opt) {
  RngStream rng(opt.seed, 108);
  std::int64_t failures = 0;
  std::int64_t tails = 0;
  std::string detail;
  for (std::int64_t i = 0; i < opt.fuzz_cycles; ++i) {
    const CodecInput in = FuzzCodecInput(rng);
    const QubanFrame frame = QubanEncode(in.r, in.mu_hat, in.m, rng);
    if (!frame.has_tail()) continue;
    ++tails;
    const double closed = DecodeTailFormula(frame, in.mu_hat, in.m, opt.offsets);
    const double cases =
        (static_cast<double>(DecodeNormalized(frame)) +
         std::floor(in.mu_hat / in.m)) * in.m;
    if (closed != cases && failures++ == 0) detail = Describe(in);
  }
  if (tails == 0) detail = "no tail frames generated";
  return Finish("formula_agreement", failures == 0 && tails > 0,
                static_cast<double>(failures), 0.0, detail);
}

CheckResult CheckVarianceProxy(const ValidationOptions& opt) {
  RngStream rng(opt.seed, 109);
  double worst = 0.0;
  std::string detail;
  for (const double epsilon : {0.25, 0.5, 1.0, 2.0}) {
    const double sigma = 1.3;
    const double mu = 40.0 * rng.Uniform() - 20.0;
    const double m = epsilon * sigma;
    double sum_sq = 0.0;
    for (std::int64_t i = 0; i < opt.variance_draws; ++i) {
      const double r = mu + sigma * rng.Normal();
      const double mu_hat = mu + sigma * rng.Normal();
      const QubanFrame frame = QubanEncode(r, mu_hat, m, rng);
      const double d = QubanDecode(frame, mu_hat, m, opt.offsets) - mu;
      sum_sq += d * d;
    }
    const double measured = sum_sq / static_cast<double>(opt.variance_draws);
    const double ratio = measured / ((1.0 + epsilon * epsilon) * sigma * sigma);
    if (ratio > worst) {
      worst = ratio;
      std::ostringstream os;
      os << "epsilon=" << epsilon << " E[(r_hat-mu)^2]=" << measured;
      detail = os.str();
    }
  }
  return Finish("variance_proxy", worst <= 1.05, worst, 1.05, detail);
}

CheckResult CheckLowerBound() {
  const LowerBoundReport report = GaussianUnitGridBound(8, 1e-4);
  std::ostringstream os;
  os.precision(6);
  os << "tail_corrected=" << report.tail_corrected_expected_length
     << " mass=" << report.total_mass;
  return Finish("lower_bound", report.expected_length >= 2.2,
                report.expected_length, 2.2, os.str());
}

ValidationReport CodecValidationSuite(const ValidationOptions& opt) {
  ValidationReport report;
  report.checks.push_back(CheckUnbiasedness(opt));
  report.checks.push_back(CheckBoundedError(opt));
  report.checks.push_back(CheckShiftInvariance(opt));
  report.checks.push_back(CheckRoundTrip(opt));
  report.checks.push_back(CheckPrefixFree(opt));
  report.checks.push_back(CheckFormulaAgreement(opt));
  report.checks.push_back(CheckVarianceProxy(opt));
  report.checks.push_back(CheckLowerBound());
  return report;
}

}  // namespace quban
