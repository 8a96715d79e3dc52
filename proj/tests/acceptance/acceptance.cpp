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

// Acceptance run: one PASS/FAIL line per criterion at the stated tolerances.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "quban/analysis.hpp"
#include "quban/presets.hpp"
#include "quban/sim.hpp"

namespace {

using namespace quban;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 2026;
constexpr std::int64_t kHorizon = 10000;
constexpr int kRuns = 10;

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void Report(int id, const char* name, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s  %2d %-26s %s  [%.1fs]\n", o.passed ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.passed) ++failures;
}

std::string Fmt(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

RunConfig Find(const std::vector<RunConfig>& suite, const std::string& name) {
  for (const auto& c : suite) {
    if (c.name == name) {
      RunConfig copy = c;
      copy.horizon = kHorizon;
      copy.num_runs = kRuns;
      copy.seed = kSeed;
      return copy;
    }
  }
  std::fprintf(stderr, "no variant %s\n", name.c_str());
  std::exit(2);
}

double MeanAt(const ExperimentResult& r, std::size_t t, double StepRecord::*field) {
  double sum = 0;
  for (const auto& run : r.runs) sum += run.metrics.steps()[t - 1].*field;
  return sum / static_cast<double>(r.runs.size());
}

double AvgBitsAt(const ExperimentResult& r, std::size_t t) {
  double sum = 0;
  for (const auto& run : r.runs) {
    sum += static_cast<double>(run.metrics.steps()[t - 1].cum_bits) / static_cast<double>(t);
  }
  return sum / static_cast<double>(r.runs.size());
}

}  // namespace

int main() {
  const ValidationOptions opt;  // full sizes: N = 1e6 draws, 1e6 fuzz cycles

  Report(1, "codec_unbiasedness", [&] {
    const auto start = Clock::now();
    const CheckResult c = CheckUnbiasedness(opt);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    return Outcome{c.passed && secs < 60.0,
                   Fmt("max |mean-r|/(M/sqrt N) = %.3f (tol 5), %d inputs x %lld draws, %.1fs (limit 60s)",
                       c.statistic, opt.unbiased_inputs,
                       static_cast<long long>(opt.unbiased_draws), secs)};
  });

  Report(2, "bounded_error", [&] {
    const CheckResult c = CheckBoundedError(opt);
    return Outcome{c.passed, Fmt("violations = %.0f over %lld cycles (tol 0)", c.statistic,
                                 static_cast<long long>(opt.fuzz_cycles))};
  });

  Report(3, "shift_invariance_support", [&] {
    const CheckResult c = CheckShiftInvariance(opt);
    return Outcome{c.passed,
                   Fmt("support exact, max binomial z = %.3f (tol 4) over %d pairs x %d centers x %lld draws",
                       c.statistic, opt.shift_pairs, opt.shift_centers,
                       static_cast<long long>(opt.shift_draws))};
  });

  Report(4, "prefix_free_round_trip", [&] {
    const CheckResult rt = CheckRoundTrip(opt);
    const CheckResult pf = CheckPrefixFree(opt);
    return Outcome{rt.passed && pf.passed,
                   Fmt("round-trip failures = %.0f / %lld, concatenated-pair failures = %.0f (tol 0)",
                       rt.statistic, static_cast<long long>(opt.fuzz_cycles), pf.statistic)};
  });

  const auto s1 = PresetSuite("setup1");
  const auto s3 = PresetSuite("setup3");
  const auto sim_start = Clock::now();
  const ExperimentResult s1_quban = RunExperiment(Find(s1, "quban_avg_arm_pt"));
  const ExperimentResult s1_none = RunExperiment(Find(s1, "none"));
  const ExperimentResult s3_quban = RunExperiment(Find(s3, "quban"));
  const ExperimentResult s3_none = RunExperiment(Find(s3, "none"));
  const double sim_secs = std::chrono::duration<double>(Clock::now() - sim_start).count();

  Report(5, "average_bits", [&] {
    const double b1 = AvgBitsAt(s1_quban, kHorizon), b1k = AvgBitsAt(s1_quban, 1000);
    const double b3 = AvgBitsAt(s3_quban, kHorizon), b3k = AvgBitsAt(s3_quban, 1000);
    const bool ok = b1 <= 4.0 && b3 <= 4.0 && b1 <= b1k + 0.2 && b3 <= b3k + 0.2 &&
                    sim_secs < 300.0;
    return Outcome{ok, Fmt("setup1 B(1e4)=%.4f B(1e3)=%.4f; setup3 B(1e4)=%.4f B(1e3)=%.4f "
                           "(tol <=4.0, <=B(1e3)+0.2); sims %.1fs (limit 300s)",
                           b1, b1k, b3, b3k, sim_secs)};
  });

  Report(6, "regret_factor", [&] {
    const double r1 = s1_quban.aggregate.final_regret_mean() / s1_none.aggregate.final_regret_mean();
    const double r3 = s3_quban.aggregate.final_regret_mean() / s3_none.aggregate.final_regret_mean();
    return Outcome{r1 <= 1.5 && r3 <= 1.5,
                   Fmt("regret(quban)/regret(none): setup1 UCB %.4f, setup3 LinUCB %.4f (tol <=1.5)",
                       r1, r3)};
  });

  Report(7, "instantaneous_bound", [&] {
    const int bound = InstantaneousBound(kHorizon);
    std::int64_t over = 0, steps = 0;
    for (const auto& run : s1_quban.runs) {
      for (const auto& s : run.metrics.steps()) over += s.bits > bound;
      steps += static_cast<std::int64_t>(run.metrics.horizon());
    }
    const double frac = static_cast<double>(over) / static_cast<double>(steps);
    return Outcome{bound == 13 && frac <= 0.01,
                   Fmt("fraction of steps with B_t > %d = %.5f (tol <=0.01)", bound, frac)};
  });

  Report(8, "one_bit_sq_penalty", [&] {
    const auto g = PresetSuite("appG");
    const double n100 = RunExperiment(Find(g, "none_lambda100")).aggregate.final_regret_mean();
    const double q100 = RunExperiment(Find(g, "sq1_lambda100")).aggregate.final_regret_mean();
    const double n1 = RunExperiment(Find(g, "none_lambda1")).aggregate.final_regret_mean();
    const double q1 = RunExperiment(Find(g, "sq1_lambda1")).aggregate.final_regret_mean();
    return Outcome{q100 >= 5.0 * n100 && q1 <= 1.5 * n1,
                   Fmt("lambda=100 sq1/none = %.2f (tol >=5); lambda=1 sq1/none = %.4f (tol <=1.5)",
                       q100 / n100, q1 / n1)};
  });

  Report(9, "baseline_gap", [&] {
    const auto s2 = PresetSuite("setup2");
    const double quban = RunExperiment(Find(s2, "quban_avg_arm_pt")).aggregate.final_regret_mean();
    const double sq1 = RunExperiment(Find(s2, "sq1")).aggregate.final_regret_mean();
    const double sq3 = RunExperiment(Find(s2, "sq3")).aggregate.final_regret_mean();
    return Outcome{sq1 >= 2.0 * quban && sq3 >= quban,
                   Fmt("setup2 regret: quban %.2f, sq1 %.2f (%.1fx, tol >=2), sq3 %.2f (%.1fx, tol >=1)",
                       quban, sq1, sq1 / quban, sq3, sq3 / quban)};
  });

  Report(10, "lower_bound_integral", [&] {
    const double e8 = GaussianUnitGridBound(8).expected_length;
    const double e6 = GaussianUnitGridBound(6).expected_length;
    return Outcome{e8 >= 2.2 && std::abs(e8 - e6) < 1e-4,
                   Fmt("expected length %.6f bits (tol >=2.2), |E(z_max=6)-E(z_max=8)| = %.2e (tol <1e-4)",
                       e8, std::abs(e8 - e6))};
  });

  Report(11, "sublinear_regret", [&] {
    const double k = static_cast<double>(s1_quban.config.env.k);
    auto scaled = [&](std::size_t n) {
      const double nn = static_cast<double>(n);
      return MeanAt(s1_quban, n, &StepRecord::regret_realized) /
             std::sqrt(nn * k * std::log(nn));
    };
    const double a = scaled(1000), b = scaled(kHorizon);
    return Outcome{b <= 1.3 * a,
                   Fmt("R_n/sqrt(n k ln n): n=1e3 %.4f, n=1e4 %.4f, ratio %.4f (tol <=1.3)",
                       a, b, b / a)};
  });

  std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures == 0 ? 0 : 1;
}
