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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "quban/analysis.hpp"
#include "quban/codec.hpp"
#include "quban/error.hpp"
#include "quban/presets.hpp"
#include "quban/sim.hpp"
#include "quban/sq.hpp"

namespace py = pybind11;
using namespace quban;

namespace {

py::dict FrameDict(const QubanFrame& f) {
  const BitString bits = f.ToBits();
  py::dict d;
  d["bits"] = bits.ToBinary();
  d["hex"] = bits.ToHex();
  d["bit_count"] = f.bit_count();
  d["tail"] = f.has_tail();
  return d;
}

RunConfig Variant(const std::string& preset, const std::string& variant,
                  std::int64_t horizon, int runs, std::uint64_t seed) {
  for (RunConfig c : PresetSuite(preset)) {
    if (c.name == variant) {
      c.horizon = horizon;
      c.num_runs = runs;
      c.seed = seed;
      return c;
    }
  }
  throw Error(ErrorCode::kConfigError, "no variant " + variant + " in " + preset);
}

}  // namespace

PYBIND11_MODULE(_quban, m) {
  m.doc() = "QuBan reward quantization for bandits";

  py::register_exception<Error>(m, "QubanError", PyExc_ValueError);

  m.def(
      "encode",
      [](double r, double mu_hat, double m_scale, std::uint64_t seed) {
        RngStream rng(seed, 0);
        const QubanFrame f = QubanEncode(r, mu_hat, m_scale, rng);
        py::dict d = FrameDict(f);
        d["r_hat"] = QubanDecode(f, mu_hat, m_scale);
        return d;
      },
      py::arg("r"), py::arg("mu_hat"), py::arg("m"), py::arg("seed") = 0,
      "Encode one reward with RngStream(seed, 0); returns the frame and its decoded value.");

  m.def(
      "decode",
      [](const std::string& bits, double mu_hat, double m_scale) {
        const BitString wire = BitString::FromBinary(bits);
        BitReader reader(wire);
        const QubanFrame f = QubanFrame::ReadFrom(reader);
        if (reader.remaining() != 0) {
          throw Error(ErrorCode::kMalformedFrame, "trailing bits after frame");
        }
        return QubanDecode(f, mu_hat, m_scale);
      },
      py::arg("bits"), py::arg("mu_hat"), py::arg("m"));

  m.def(
      "encode_many",
      [](double r, double mu_hat, double m_scale, std::int64_t draws, std::uint64_t seed) {
        RngStream rng(seed, 0);
        std::vector<double> out(static_cast<std::size_t>(draws));
        std::vector<int> bits(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
          const QubanFrame f = QubanEncode(r, mu_hat, m_scale, rng);
          out[i] = QubanDecode(f, mu_hat, m_scale);
          bits[i] = f.bit_count();
        }
        return py::make_tuple(out, bits);
      },
      py::arg("r"), py::arg("mu_hat"), py::arg("m"), py::arg("draws"), py::arg("seed") = 0,
      "Decoded values and frame lengths of `draws` independent encodings.");

  m.def("instantaneous_bound", &InstantaneousBound, py::arg("n"));

  m.def(
      "sq_roundtrip",
      [](double x, double lo, double hi, int bits, std::uint64_t seed) {
        const LevelGrid grid = MakeUniformGrid(lo, hi, bits);
        RngStream rng(seed, 0);
        return SqDecode(SqEncode(x, grid, rng), grid);
      },
      py::arg("x"), py::arg("lo"), py::arg("hi"), py::arg("bits"), py::arg("seed") = 0);

  m.def(
      "lower_bound",
      [](int z_max, double step) {
        const LowerBoundReport r = GaussianUnitGridBound(z_max, step);
        py::dict d;
        d["levels"] = r.levels;
        d["probabilities"] = r.probabilities;
        d["code_lengths"] = r.code_lengths;
        d["total_mass"] = r.total_mass;
        d["expected_length"] = r.expected_length;
        d["tail_corrected_expected_length"] = r.tail_corrected_expected_length;
        return d;
      },
      py::arg("z_max") = 8, py::arg("step") = 1e-4);

  m.def(
      "validate",
      [](bool quick) {
        const ValidationOptions opt = quick ? ValidationOptions::Quick() : ValidationOptions{};
        py::gil_scoped_release release;
        const ValidationReport report = CodecValidationSuite(opt);
        py::gil_scoped_acquire acquire;
        py::list out;
        for (const CheckResult& c : report.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["statistic"] = c.statistic;
          d["tolerance"] = c.tolerance;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("quick") = true);

  m.def("preset_variants", [](const std::string& preset) {
    std::vector<std::string> names;
    for (const auto& c : PresetSuite(preset)) names.push_back(c.name);
    return names;
  });

  m.def(
      "run_experiment",
      [](const std::string& preset, const std::string& variant, std::int64_t horizon,
         int runs, std::uint64_t seed) {
        const RunConfig config = Variant(preset, variant, horizon, runs, seed);
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = RunExperiment(config);
        }
        const AggregateCurves& a = result.aggregate;
        py::dict d;
        d["t"] = a.t;
        d["regret_mean"] = a.regret_mean;
        d["regret_std"] = a.regret_std;
        d["bits_mean"] = a.bits_mean;
        d["avg_bits_mean"] = a.avg_bits_mean;
        d["final_regret_mean"] = a.final_regret_mean();
        d["avg_bits"] = a.final_avg_bits();
        d["guard_activations"] = result.guard_activations;
        return d;
      },
      py::arg("preset"), py::arg("variant"), py::arg("horizon") = 10000,
      py::arg("runs") = 10, py::arg("seed") = 0);
}
