/*
 * Copyright 2026 the wvg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wvg {

// Command implementations behind the CLI binary.  Each run_* call resolves its
// options, computes, and writes the dataset to `opts.out` (empty = the console
// stream).  A file output always gains a JSON manifest sidecar at
// `<out>.manifest.json` carrying the resolved configuration and seed;
// run_from_manifest replays it to byte-identical data files.

inline constexpr std::string_view kToolName = "wvg";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Grid syntax: "lo:hi:step" (inclusive sweep), "a,b,c" (explicit list), or a
// single value.  Values must be finite and strictly increasing.
std::vector<double> parse_grid(std::string_view text);

enum class OutputFormat { Csv, Json };
OutputFormat parse_format(std::string_view text);

struct SimulateOptions {
  std::string dist = "uniform:0,1";
  int n = 10;
  std::string model = "normalized";  // natural | normalized
  std::string quota_grid = "0.05:0.95:0.05";
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 42;
  std::string estimator = "one-perm";  // one-perm | exact
  bool full_profile = false;           // default: extreme ranks only
  int threads = 0;                     // 0 = hardware count
  std::string format = "csv";
  std::string out;  // empty = console
};

struct PredictOptions {
  std::string dist = "uniform:0,1";
  int n = 10;
  std::string target = "max";    // max | min | rank
  double p = 0.5;                // rank target only
  std::string method = "auto";   // auto | series | quadrature | asymptotic
  std::string format = "json";
  std::string out;
};

struct RenewalOptions {
  std::string dist = "uniform:0,1";
  std::string cond;  // "", "below:x", or "above:x"
  std::string q_grid = "1:10:1";
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 7;
  std::string method = "mc";  // mc | convolve
  double step = 1e-4;         // convolve grid step
  std::string format = "csv";
  std::string out;
};

struct CompareOptions {
  std::string dist = "uniform:0,1";
  int n = 10;
  std::string model = "normalized";
  std::string quota_grid = "0.1:0.9:0.1";
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 42;
  std::optional<double> p;  // adds one interior-rank row per quota
  int threads = 0;
  std::string format = "csv";
  std::string out;
};

struct RecipeOptions {
  std::string name;  // fig1 | fig2 | fig3
  std::uint64_t reps = 1'000'000;
  std::uint64_t seed = 42;
  int threads = 0;
  std::string out_dir = ".";
};

struct ShapleyOptions {
  std::string weights;  // comma-separated positive reals
  double quota = 0.0;
  std::string method = "auto";  // auto | perm | subset | sample
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

void run_simulate(const SimulateOptions& opts, std::ostream& console);
void run_predict(const PredictOptions& opts, std::ostream& console);
void run_renewal(const RenewalOptions& opts, std::ostream& console);
void run_compare(const CompareOptions& opts, std::ostream& console);

// Presets reproducing the study datasets; writes <name>_data.csv (+ manifest)
// into out_dir.  fig1: uniform weights, n in {10,20}, normalized quota sweep.
// fig2: unit-rate exponential weights, n in {10,20,50,100} at quota 1/2.
// fig3: both laws, n=100, quota 1/2, full rank profile.
void run_recipe(const RecipeOptions& opts, std::ostream& console);

struct RerunOverrides {
  std::optional<std::string> out;      // single-file commands
  std::optional<std::string> out_dir;  // recipes
  std::optional<int> threads;
};
void run_from_manifest(const std::string& manifest_path,
                       const RerunOverrides& overrides, std::ostream& console);

void run_shapley(const ShapleyOptions& opts, std::ostream& console);

}  // namespace wvg
