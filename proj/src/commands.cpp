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
#include "wvg/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "wvg/csvio.hpp"
#include "wvg/distributions.hpp"
#include "wvg/errors.hpp"
#include "wvg/format.hpp"
#include "wvg/game.hpp"
#include "wvg/montecarlo.hpp"
#include "wvg/renewal.hpp"
#include "wvg/theory.hpp"

namespace wvg {
namespace {

using Json = nlohmann::ordered_json;

double parse_number(std::string_view text, const char* what) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ConfigError(std::string(what) + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string iso_utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// A dataset with typed cells: strings stay verbatim, numbers render with
// shortest round-trip formatting, so CSV bytes depend only on the values.
struct DataSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string cell_to_csv(const Json& cell) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_float()) return format_double(cell.get<double>());
  return cell.dump();  // integers and booleans
}

std::string render_csv(const DataSet& ds) {
  CsvTable table;
  table.header = ds.columns;
  for (const auto& row : ds.rows) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& cell : row) fields.push_back(cell_to_csv(cell));
    table.rows.push_back(std::move(fields));
  }
  return csv_to_string(table);
}

std::string render_json(const DataSet& ds) {
  Json arr = Json::array();
  for (const auto& row : ds.rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < ds.columns.size(); ++c) obj[ds.columns[c]] = row[c];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render(const DataSet& ds, OutputFormat format) {
  return format == OutputFormat::Csv ? render_csv(ds) : render_json(ds);
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << content;
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

std::string manifest_path_for(const std::string& out) { return out + ".manifest.json"; }

void write_manifest(const std::string& subcommand, const Json& config,
                    const std::vector<std::string>& outputs,
                    const std::string& started, const std::string& finished) {
  Json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["started_utc"] = started;
  m["finished_utc"] = finished;
  m["config"] = config;
  m["outputs"] = outputs;
  write_file(manifest_path_for(outputs.front()), m.dump(2) + "\n");
}

// Emits the dataset and, for file outputs, the manifest sidecar.  Returns
// whether a summary line is appropriate (file outputs only; console output
// stays machine-parseable).
bool emit(const DataSet& ds, OutputFormat format, const std::string& out,
          const std::string& subcommand, const Json& config,
          const std::string& started, std::ostream& console) {
  const std::string body = render(ds, format);
  if (out.empty()) {
    console << body;
    return false;
  }
  write_file(out, body);
  write_manifest(subcommand, config, {out}, started, iso_utc_now());
  return true;
}

WeightModel parse_model(const std::string& text) {
  if (text == "natural") return WeightModel::NaturalIID;
  if (text == "normalized") return WeightModel::NormalizedIID;
  throw ConfigError("model must be 'natural' or 'normalized'");
}

Estimator parse_estimator(const std::string& text) {
  if (text == "one-perm") return Estimator::OnePermPerGame;
  if (text == "exact") return Estimator::ExactPerGame;
  throw ConfigError("estimator must be 'one-perm' or 'exact'");
}

ConditionedLaw parse_conditioned(const WeightDistribution& dist, const std::string& cond) {
  try {
    if (cond.empty()) return ConditionedLaw::full(dist);
    const auto parts = split(cond, ':');
    if (parts.size() == 2) {
      const double x = parse_number(parts[1], "conditioning threshold");
      if (parts[0] == "below") return ConditionedLaw::below(dist, x);
      if (parts[0] == "above") return ConditionedLaw::above(dist, x);
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("conditioning: ") + e.what());
  }
  throw ConfigError("conditioning must be 'below:x' or 'above:x'");
}

// Quota range within which the extreme-rank predictions hold, on the absolute
// quota scale.
void absolute_quota_range(const WeightDistribution& dist, int n, double* lo, double* hi) {
  *lo = std::pow(n, 0.25);
  *hi = (n - std::pow(n, 2.0 / 3.0)) * dist.mean();
}

Prediction predict_extreme(const WeightDistribution& dist, int n, bool want_max,
                           const std::string& method) {
  const bool is_uniform = dist.kind() == DistKind::Uniform;
  std::string resolved = method;
  if (resolved == "auto") resolved = is_uniform ? "series" : "quadrature";
  if (resolved == "quadrature") {
    return want_max ? predict_max_expected(dist, n) : predict_min_expected(dist, n);
  }
  if (resolved == "series") {
    if (!is_uniform) throw ConfigError("series form needs a uniform law");
    const auto sup = dist.support();
    return want_max ? uniform_series_max(sup.lower, sup.upper, n, 1e-14)
                    : uniform_series_min(sup.lower, sup.upper, n, 1e-14);
  }
  if (resolved == "asymptotic") {
    if (is_uniform) throw ConfigError("asymptotic form needs an exponential law");
    const auto f = exp_formulas(n);
    Prediction p;
    p.value = want_max ? f.max_asymptotic : f.min_asymptotic;
    p.form = PredictionForm::Asymptotic;
    p.target = want_max ? PredictionTarget::MaxRank : PredictionTarget::MinRank;
    p.n = n;
    absolute_quota_range(dist, n, &p.quota_lo, &p.quota_hi);
    return p;
  }
  throw ConfigError("method must be auto, series, quadrature, or asymptotic");
}

const char* form_name(PredictionForm form) {
  switch (form) {
    case PredictionForm::Quadrature: return "quadrature";
    case PredictionForm::Series: return "series";
    case PredictionForm::Asymptotic: return "asymptotic";
    case PredictionForm::Limit: return "limit";
  }
  return "?";
}

std::uint64_t checked_rep_count(std::uint64_t reps) {
  if (reps == 0) throw ConfigError("need at least one replication");
  return reps;
}

// ---- options <-> manifest config ----

Json to_config(const SimulateOptions& o) {
  Json j;
  j["dist"] = o.dist;
  j["n"] = o.n;
  j["model"] = o.model;
  j["quota_grid"] = o.quota_grid;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  j["estimator"] = o.estimator;
  j["full_profile"] = o.full_profile;
  j["threads"] = o.threads;
  j["format"] = o.format;
  j["out"] = o.out;
  return j;
}

SimulateOptions simulate_from_config(const Json& j) {
  SimulateOptions o;
  j.at("dist").get_to(o.dist);
  j.at("n").get_to(o.n);
  j.at("model").get_to(o.model);
  j.at("quota_grid").get_to(o.quota_grid);
  j.at("reps").get_to(o.reps);
  j.at("seed").get_to(o.seed);
  j.at("estimator").get_to(o.estimator);
  j.at("full_profile").get_to(o.full_profile);
  j.at("threads").get_to(o.threads);
  j.at("format").get_to(o.format);
  j.at("out").get_to(o.out);
  return o;
}

Json to_config(const PredictOptions& o) {
  Json j;
  j["dist"] = o.dist;
  j["n"] = o.n;
  j["target"] = o.target;
  j["p"] = o.p;
  j["method"] = o.method;
  j["format"] = o.format;
  j["out"] = o.out;
  return j;
}

PredictOptions predict_from_config(const Json& j) {
  PredictOptions o;
  j.at("dist").get_to(o.dist);
  j.at("n").get_to(o.n);
  j.at("target").get_to(o.target);
  j.at("p").get_to(o.p);
  j.at("method").get_to(o.method);
  j.at("format").get_to(o.format);
  j.at("out").get_to(o.out);
  return o;
}

Json to_config(const RenewalOptions& o) {
  Json j;
  j["dist"] = o.dist;
  j["cond"] = o.cond;
  j["q_grid"] = o.q_grid;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  j["method"] = o.method;
  j["step"] = o.step;
  j["format"] = o.format;
  j["out"] = o.out;
  return j;
}

RenewalOptions renewal_from_config(const Json& j) {
  RenewalOptions o;
  j.at("dist").get_to(o.dist);
  j.at("cond").get_to(o.cond);
  j.at("q_grid").get_to(o.q_grid);
  j.at("reps").get_to(o.reps);
  j.at("seed").get_to(o.seed);
  j.at("method").get_to(o.method);
  j.at("step").get_to(o.step);
  j.at("format").get_to(o.format);
  j.at("out").get_to(o.out);
  return o;
}

Json to_config(const CompareOptions& o) {
  Json j;
  j["dist"] = o.dist;
  j["n"] = o.n;
  j["model"] = o.model;
  j["quota_grid"] = o.quota_grid;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  if (o.p) {
    j["p"] = *o.p;
  } else {
    j["p"] = nullptr;
  }
  j["threads"] = o.threads;
  j["format"] = o.format;
  j["out"] = o.out;
  return j;
}

CompareOptions compare_from_config(const Json& j) {
  CompareOptions o;
  j.at("dist").get_to(o.dist);
  j.at("n").get_to(o.n);
  j.at("model").get_to(o.model);
  j.at("quota_grid").get_to(o.quota_grid);
  j.at("reps").get_to(o.reps);
  j.at("seed").get_to(o.seed);
  if (!j.at("p").is_null()) o.p = j.at("p").get<double>();
  j.at("threads").get_to(o.threads);
  j.at("format").get_to(o.format);
  j.at("out").get_to(o.out);
  return o;
}

Json to_config(const RecipeOptions& o) {
  Json j;
  j["name"] = o.name;
  j["reps"] = o.reps;
  j["seed"] = o.seed;
  j["threads"] = o.threads;
  j["out_dir"] = o.out_dir;
  return j;
}

RecipeOptions recipe_from_config(const Json& j) {
  RecipeOptions o;
  j.at("name").get_to(o.name);
  j.at("reps").get_to(o.reps);
  j.at("seed").get_to(o.seed);
  j.at("threads").get_to(o.threads);
  j.at("out_dir").get_to(o.out_dir);
  return o;
}

Json to_config(const ShapleyOptions& o) {
  Json j;
  j["weights"] = o.weights;
  j["quota"] = o.quota;
  j["method"] = o.method;
  j["samples"] = o.samples;
  j["seed"] = o.seed;
  j["format"] = o.format;
  j["out"] = o.out;
  return j;
}

ShapleyOptions shapley_from_config(const Json& j) {
  ShapleyOptions o;
  j.at("weights").get_to(o.weights);
  j.at("quota").get_to(o.quota);
  j.at("method").get_to(o.method);
  j.at("samples").get_to(o.samples);
  j.at("seed").get_to(o.seed);
  j.at("format").get_to(o.format);
  j.at("out").get_to(o.out);
  return o;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("grid: expected lo:hi:step");
    const double lo = parse_number(parts[0], "grid lo");
    const double hi = parse_number(parts[1], "grid hi");
    const double step = parse_number(parts[2], "grid step");
    if (!(step > 0.0)) throw ConfigError("grid: step must be positive");
    if (hi < lo) throw ConfigError("grid: hi must not be below lo");
    // Tolerate one part in 10^9 of accumulated rounding at the top end.
    const double limit = hi + step * 1e-9;
    for (int k = 0;; ++k) {
      const double v = lo + k * step;
      if (v > limit) break;
      values.push_back(v);
      if (k > 1'000'000) throw ConfigError("grid: too many points");
    }
  } else if (text.find(',') != std::string_view::npos) {
    for (const auto part : split(text, ',')) {
      values.push_back(parse_number(part, "grid value"));
    }
  } else {
    values.push_back(parse_number(text, "grid value"));
  }
  if (values.empty()) throw ConfigError("grid: empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw ConfigError("grid: values must be strictly increasing");
    }
  }
  return values;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ConfigError("format must be 'csv' or 'json'");
}

void run_simulate(const SimulateOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  const OutputFormat format = parse_format(opts.format);

  ExperimentConfig cfg;
  cfg.dist = parse_dist_spec(opts.dist);
  cfg.n = opts.n;
  cfg.model = parse_model(opts.model);
  cfg.quota_grid = parse_grid(opts.quota_grid);
  cfg.reps = checked_rep_count(opts.reps);
  cfg.seed = opts.seed;
  cfg.estimator = parse_estimator(opts.estimator);
  cfg.threads = opts.threads;

  const ExperimentResult res = run_experiment(cfg);

  std::vector<int> ranks;  // 1-based; rank 1 holds the smallest weight
  if (opts.full_profile) {
    for (int r = 1; r <= opts.n; ++r) ranks.push_back(r);
  } else {
    ranks.push_back(1);
    if (opts.n > 1) ranks.push_back(opts.n);
  }

  DataSet ds;
  ds.columns = {"quota", "rank", "mean", "stderr", "reps", "n", "model", "dist", "seed"};
  const std::string dist_str = cfg.dist.spec_string();
  std::uint64_t improper_total = 0;
  for (std::size_t qi = 0; qi < cfg.quota_grid.size(); ++qi) {
    improper_total += res.improper[qi];
    for (int r : ranks) {
      ds.rows.push_back({cfg.quota_grid[qi], r, res.means[qi][r - 1],
                         res.stderrs[qi][r - 1], opts.reps, opts.n, opts.model,
                         dist_str, opts.seed});
    }
  }

  if (emit(ds, format, opts.out, "simulate", to_config(opts), started, console)) {
    console << "simulate: wrote " << ds.rows.size() << " rows to " << opts.out;
    if (improper_total > 0) {
      console << " (" << improper_total << " improper replications)";
    }
    console << "\n";
  } else if (improper_total > 0) {
    // Console data goes to stdout; keep the warning out of the data stream.
    std::cerr << "simulate: " << improper_total << " improper replications\n";
  }
}

void run_predict(const PredictOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  const OutputFormat format = parse_format(opts.format);
  const WeightDistribution dist = parse_dist_spec(opts.dist);

  Prediction pred;
  double p_echo = 0.0;
  if (opts.target == "max" || opts.target == "min") {
    pred = predict_extreme(dist, opts.n, opts.target == "max", opts.method);
    p_echo = opts.target == "max" ? 1.0 : 0.0;
  } else if (opts.target == "rank") {
    if (opts.method != "auto") {
      throw ConfigError("rank predictions have a single limit form; use --method auto");
    }
    pred.value = predict_rank_limit(dist, opts.p);
    pred.form = PredictionForm::Limit;
    pred.target = PredictionTarget::Rank;
    pred.n = 0;  // n -> infinity limit of the n-scaled value
    pred.p = opts.p;
    p_echo = opts.p;
  } else {
    throw ConfigError("target must be 'max', 'min', or 'rank'");
  }

  DataSet ds;
  ds.columns = {"target", "n", "p", "method", "form", "value", "quota_lo", "quota_hi"};
  ds.rows.push_back({opts.target, pred.n, p_echo, opts.method, form_name(pred.form),
                     pred.value, pred.quota_lo, pred.quota_hi});

  if (emit(ds, format, opts.out, "predict", to_config(opts), started, console)) {
    console << "predict: wrote " << opts.out << "\n";
  }
}

void run_renewal(const RenewalOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  const OutputFormat format = parse_format(opts.format);
  const WeightDistribution dist = parse_dist_spec(opts.dist);
  const ConditionedLaw law = parse_conditioned(dist, opts.cond);
  const std::vector<double> grid = parse_grid(opts.q_grid);

  std::vector<RenewalEstimate> estimates;
  if (opts.method == "mc") {
    checked_rep_count(opts.reps);
    for (double q : grid) {
      estimates.push_back(renewal_mc(law, q, opts.reps, opts.seed));
    }
  } else if (opts.method == "convolve") {
    const auto values = renewal_convolve_grid(law, grid, opts.step);
    for (double v : values) estimates.push_back({v, 0.0, 0});
  } else {
    throw ConfigError("method must be 'mc' or 'convolve'");
  }

  DataSet ds;
  ds.columns = {"Q", "m_hat", "stderr", "asymptote", "residual"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double asym = renewal_asymptote(law, grid[i]);
    ds.rows.push_back({grid[i], estimates[i].mean, estimates[i].std_error, asym,
                       estimates[i].mean - asym});
  }

  if (emit(ds, format, opts.out, "renewal", to_config(opts), started, console)) {
    console << "renewal: wrote " << ds.rows.size() << " rows to " << opts.out << "\n";
  }
}

void run_compare(const CompareOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  const OutputFormat format = parse_format(opts.format);

  ExperimentConfig cfg;
  cfg.dist = parse_dist_spec(opts.dist);
  cfg.n = opts.n;
  cfg.model = parse_model(opts.model);
  cfg.quota_grid = parse_grid(opts.quota_grid);
  cfg.reps = checked_rep_count(opts.reps);
  cfg.seed = opts.seed;
  cfg.estimator = Estimator::OnePermPerGame;
  cfg.threads = opts.threads;
  if (opts.p && !(*opts.p > 0.0 && *opts.p < 1.0)) {
    throw ConfigError("rank fraction p must lie strictly between 0 and 1");
  }

  const ExperimentResult res = run_experiment(cfg);
  const double pred_max = predict_extreme(cfg.dist, opts.n, true, "auto").value;
  const double pred_min = predict_extreme(cfg.dist, opts.n, false, "auto").value;
  double quota_lo = 0.0, quota_hi = 0.0;
  absolute_quota_range(cfg.dist, opts.n, &quota_lo, &quota_hi);

  DataSet ds;
  ds.columns = {"quota", "rank_class", "simulated", "stderr", "predicted",
                "deviation_sigma"};
  double max_abs_sigma = 0.0;
  int out_of_range = 0;
  auto add_row = [&](std::size_t qi, const char* rank_class, int rank, double predicted) {
    const double sim = res.means[qi][rank - 1];
    const double se = res.stderrs[qi][rank - 1];
    const double sigma = se > 0.0 ? (sim - predicted) / se : 0.0;
    max_abs_sigma = std::max(max_abs_sigma, std::fabs(sigma));
    ds.rows.push_back({cfg.quota_grid[qi], rank_class, sim, se, predicted, sigma});
  };
  for (std::size_t qi = 0; qi < cfg.quota_grid.size(); ++qi) {
    const double quota = cfg.quota_grid[qi];
    const double abs_quota = cfg.model == WeightModel::NaturalIID
                                 ? quota
                                 : quota * opts.n * cfg.dist.mean();
    if (abs_quota < quota_lo || abs_quota > quota_hi) ++out_of_range;
    add_row(qi, "max", opts.n, pred_max);
    add_row(qi, "min", 1, pred_min);
    if (opts.p) {
      const int rank = std::clamp(static_cast<int>(std::lround(*opts.p * opts.n)), 1,
                                  opts.n);
      add_row(qi, "p", rank, predict_rank_limit(cfg.dist, *opts.p) / opts.n);
    }
  }

  // The summary line always appears; with console data output it moves to the
  // error stream so the data stays machine-parseable.
  const bool file_mode =
      emit(ds, format, opts.out, "compare", to_config(opts), started, console);
  std::ostream& status = file_mode ? console : std::cerr;
  status << "compare: " << ds.rows.size() << " rows, max deviation "
         << format_double(max_abs_sigma) << " sigma";
  if (out_of_range > 0) {
    status << ", " << out_of_range << " quota(s) outside the predicted range";
  }
  status << "\n";
}

namespace {

void recipe_extreme_rows(DataSet& ds, const ExperimentConfig& cfg,
                         const ExperimentResult& res, double quota, std::size_t qi,
                         double pred_max_raw, double pred_min_raw) {
  const int n = cfg.n;
  const std::string dist_str = cfg.dist.spec_string();
  const double nn = static_cast<double>(n);
  // Max scales by n (plateau / log growth); min scales by n^2 (both laws).
  ds.rows.push_back({dist_str, n, quota, "max", n, 1.0, nn, nn * res.means[qi][n - 1],
                     nn * res.stderrs[qi][n - 1], nn * pred_max_raw});
  ds.rows.push_back({dist_str, n, quota, "min", 1, 1.0 / nn, nn * nn,
                     nn * nn * res.means[qi][0], nn * nn * res.stderrs[qi][0],
                     nn * nn * pred_min_raw});
}

}  // namespace

void run_recipe(const RecipeOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  if (opts.name != "fig1" && opts.name != "fig2" && opts.name != "fig3") {
    throw ConfigError("unknown recipe '" + opts.name + "' (expected fig1, fig2, or fig3)");
  }
  checked_rep_count(opts.reps);

  DataSet ds;
  ds.columns = {"dist", "n", "quota", "rank_class", "rank", "p",
                "scale", "value", "stderr", "predicted"};

  if (opts.name == "fig1") {
    // Scaled extreme values across the quota range for uniform weights.
    for (int n : {10, 20}) {
      ExperimentConfig cfg;
      cfg.dist = WeightDistribution::uniform(0.0, 1.0);
      cfg.n = n;
      cfg.model = WeightModel::NormalizedIID;
      cfg.quota_grid = parse_grid("0.05:0.95:0.05");
      cfg.reps = opts.reps;
      cfg.seed = opts.seed + static_cast<std::uint64_t>(n);
      cfg.threads = opts.threads;
      const ExperimentResult res = run_experiment(cfg);
      const double pm = predict_extreme(cfg.dist, n, true, "auto").value;
      const double pn = predict_extreme(cfg.dist, n, false, "auto").value;
      for (std::size_t qi = 0; qi < cfg.quota_grid.size(); ++qi) {
        recipe_extreme_rows(ds, cfg, res, cfg.quota_grid[qi], qi, pm, pn);
      }
    }
  } else if (opts.name == "fig2") {
    // Scaled extremes against n at the central quota for exponential weights.
    for (int n : {10, 20, 50, 100}) {
      ExperimentConfig cfg;
      cfg.dist = WeightDistribution::exponential(1.0);
      cfg.n = n;
      cfg.model = WeightModel::NormalizedIID;
      cfg.quota_grid = {0.5};
      cfg.reps = opts.reps;
      cfg.seed = opts.seed + static_cast<std::uint64_t>(n);
      cfg.threads = opts.threads;
      const ExperimentResult res = run_experiment(cfg);
      const double pm = predict_extreme(cfg.dist, n, true, "auto").value;
      const double pn = predict_extreme(cfg.dist, n, false, "auto").value;
      recipe_extreme_rows(ds, cfg, res, 0.5, 0, pm, pn);
    }
  } else {
    // Full n-scaled rank profile at the central quota for both laws.
    const std::vector<WeightDistribution> dists = {
        WeightDistribution::uniform(0.0, 1.0), WeightDistribution::exponential(1.0)};
    const int n = 100;
    for (std::size_t di = 0; di < dists.size(); ++di) {
      ExperimentConfig cfg;
      cfg.dist = dists[di];
      cfg.n = n;
      cfg.model = WeightModel::NormalizedIID;
      cfg.quota_grid = {0.5};
      cfg.reps = opts.reps;
      cfg.seed = opts.seed + di;
      cfg.threads = opts.threads;
      const ExperimentResult res = run_experiment(cfg);
      const double nn = n;
      const std::string dist_str = cfg.dist.spec_string();
      // Interior ranks compare against the large-n limit of the n-scaled
      // value; the extreme ranks use their dedicated predictors.
      const double pred_top = nn * predict_extreme(cfg.dist, n, true, "auto").value;
      const double pred_bottom = nn * predict_extreme(cfg.dist, n, false, "auto").value;
      for (int r = 1; r <= n; ++r) {
        const double p = static_cast<double>(r) / nn;
        double predicted;
        if (r == n) {
          predicted = pred_top;
        } else if (r == 1) {
          predicted = pred_bottom;
        } else {
          predicted = predict_rank_limit(cfg.dist, p);
        }
        ds.rows.push_back({dist_str, n, 0.5, "rank", r, p, nn,
                           nn * res.means[0][r - 1], nn * res.stderrs[0][r - 1],
                           predicted});
      }
    }
  }

  const std::string out = opts.out_dir + "/" + opts.name + "_data.csv";
  write_file(out, render_csv(ds));
  write_manifest("recipe", to_config(opts), {out}, started, iso_utc_now());
  console << "recipe " << opts.name << ": wrote " << ds.rows.size() << " rows to "
          << out << "\n";
}

void run_shapley(const ShapleyOptions& opts, std::ostream& console) {
  const std::string started = iso_utc_now();
  const OutputFormat format = parse_format(opts.format);
  std::vector<double> weights;
  for (const auto part : split(opts.weights, ',')) {
    weights.push_back(parse_number(part, "weight"));
  }
  const Game game = make_game(std::move(weights), opts.quota);
  const int n = game.n();

  ShapleyProfile prof;
  std::string resolved = opts.method;
  if (resolved == "auto") resolved = n <= 24 ? "subset" : "sample";
  if (resolved == "perm") {
    prof = shapley_exact_perm(game);
  } else if (resolved == "subset") {
    prof = shapley_exact_subset(game);
  } else if (resolved == "sample") {
    prof = shapley_sample_perms(game, opts.samples, opts.seed);
  } else {
    throw ConfigError("method must be auto, perm, subset, or sample");
  }
  const bool sampled = !prof.stderrs.empty();

  std::string body;
  if (format == OutputFormat::Json) {
    Json j;
    j["method"] = resolved;
    j["quota"] = game.quota;
    j["proper"] = prof.proper;
    j["values"] = prof.values;
    if (sampled) j["stderr"] = prof.stderrs;
    body = j.dump(2) + "\n";
  } else {
    DataSet ds;
    ds.columns = {"rank", "value", "stderr"};
    for (int r = 1; r <= n; ++r) {
      ds.rows.push_back({r, prof.values[r - 1], sampled ? prof.stderrs[r - 1] : 0.0});
    }
    body = render_csv(ds);
  }

  if (opts.out.empty()) {
    console << body;
    return;
  }
  write_file(opts.out, body);
  write_manifest("shapley", to_config(opts), {opts.out}, started, iso_utc_now());
  console << "shapley: wrote " << opts.out << "\n";
}

void run_from_manifest(const std::string& manifest_path,
                       const RerunOverrides& overrides, std::ostream& console) {
  std::ifstream is(manifest_path, std::ios::binary);
  if (!is) throw IoError("cannot read manifest: " + manifest_path);
  std::ostringstream buf;
  buf << is.rdbuf();

  try {
    const Json m = Json::parse(buf.str());
    if (m.at("tool").get<std::string>() != kToolName) {
      throw IoError("manifest was not produced by this tool");
    }
    if (m.at("version").get<std::string>() != kToolVersion) {
      console << "note: manifest version " << m.at("version").get<std::string>()
              << " differs from tool version " << kToolVersion << "\n";
    }
    const std::string sub = m.at("subcommand").get<std::string>();
    const Json& config = m.at("config");

    if (sub == "simulate") {
      SimulateOptions o = simulate_from_config(config);
      if (overrides.out) o.out = *overrides.out;
      if (overrides.threads) o.threads = *overrides.threads;
      run_simulate(o, console);
    } else if (sub == "predict") {
      PredictOptions o = predict_from_config(config);
      if (overrides.out) o.out = *overrides.out;
      run_predict(o, console);
    } else if (sub == "renewal") {
      RenewalOptions o = renewal_from_config(config);
      if (overrides.out) o.out = *overrides.out;
      run_renewal(o, console);
    } else if (sub == "compare") {
      CompareOptions o = compare_from_config(config);
      if (overrides.out) o.out = *overrides.out;
      if (overrides.threads) o.threads = *overrides.threads;
      run_compare(o, console);
    } else if (sub == "recipe") {
      RecipeOptions o = recipe_from_config(config);
      if (overrides.out_dir) o.out_dir = *overrides.out_dir;
      if (overrides.threads) o.threads = *overrides.threads;
      run_recipe(o, console);
    } else if (sub == "shapley") {
      ShapleyOptions o = shapley_from_config(config);
      if (overrides.out) o.out = *overrides.out;
      run_shapley(o, console);
    } else {
      throw IoError("manifest names unknown subcommand '" + sub + "'");
    }
  } catch (const Json::exception& e) {
    throw IoError(std::string("manifest malformed: ") + e.what());
  }
}

}  // namespace wvg
