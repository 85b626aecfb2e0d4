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
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wvg/commands.hpp"
#include "wvg/errors.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 numeric non-convergence,
// 4 I/O error.

int dispatch(const std::string& sub, const wvg::SimulateOptions& sim,
             const wvg::PredictOptions& pre, const wvg::RenewalOptions& ren,
             const wvg::CompareOptions& cmp, const wvg::RecipeOptions& rec,
             const wvg::ShapleyOptions& sha, const std::string& manifest,
             const wvg::RerunOverrides& overrides) {
  if (sub == "simulate") wvg::run_simulate(sim, std::cout);
  else if (sub == "predict") wvg::run_predict(pre, std::cout);
  else if (sub == "renewal") wvg::run_renewal(ren, std::cout);
  else if (sub == "compare") wvg::run_compare(cmp, std::cout);
  else if (sub == "recipe") wvg::run_recipe(rec, std::cout);
  else if (sub == "shapley") wvg::run_shapley(sha, std::cout);
  else if (sub == "rerun") wvg::run_from_manifest(manifest, overrides, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected Shapley values in weighted voting games with random weights"};
  app.set_version_flag("--version", std::string(wvg::kToolVersion));
  app.set_config("--config", "", "key=value config file ([subcommand] sections)");
  app.require_subcommand(1);

  wvg::SimulateOptions sim;
  wvg::PredictOptions pre;
  wvg::RenewalOptions ren;
  wvg::CompareOptions cmp;
  wvg::RecipeOptions rec;
  wvg::ShapleyOptions sha;
  std::string manifest;
  std::optional<std::string> rr_out, rr_out_dir;
  std::optional<int> rr_threads;

  auto* s = app.add_subcommand("simulate", "Estimate expected values by rank over a quota grid");
  s->add_option("--dist", sim.dist, "weight law: uniform:a,b or exp:rate")->capture_default_str();
  s->add_option("--n", sim.n, "number of agents")->capture_default_str();
  s->add_option("--model", sim.model, "natural | normalized")->capture_default_str();
  s->add_option("--quota-grid", sim.quota_grid, "lo:hi:step, list, or single value")->capture_default_str();
  s->add_option("--reps", sim.reps, "replications")->capture_default_str();
  s->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  s->add_option("--estimator", sim.estimator, "one-perm | exact")->capture_default_str();
  s->add_flag("--full-profile", sim.full_profile, "emit every rank, not just the extremes");
  s->add_option("--threads", sim.threads, "worker threads (0 = hardware)")->capture_default_str();
  s->add_option("--format", sim.format, "csv | json")->capture_default_str();
  s->add_option("--out", sim.out, "output path (default: stdout)");

  auto* p = app.add_subcommand("predict", "Evaluate the theoretical expected values");
  p->add_option("--dist", pre.dist, "weight law")->capture_default_str();
  p->add_option("--n", pre.n, "number of agents")->capture_default_str();
  p->add_option("--target", pre.target, "max | min | rank")->capture_default_str();
  p->add_option("--p", pre.p, "rank fraction in (0,1), rank target only")->capture_default_str();
  p->add_option("--method", pre.method, "auto | series | quadrature | asymptotic")->capture_default_str();
  p->add_option("--format", pre.format, "csv | json")->capture_default_str();
  p->add_option("--out", pre.out, "output path (default: stdout)");

  auto* r = app.add_subcommand("renewal", "Count partial sums below thresholds");
  r->add_option("--dist", ren.dist, "step law")->capture_default_str();
  r->add_option("--cond", ren.cond, "below:x | above:x (default: unconditioned)");
  r->add_option("--q-grid", ren.q_grid, "threshold grid")->capture_default_str();
  r->add_option("--reps", ren.reps, "replications (mc)")->capture_default_str();
  r->add_option("--seed", ren.seed, "RNG seed (mc)")->capture_default_str();
  r->add_option("--method", ren.method, "mc | convolve")->capture_default_str();
  r->add_option("--step", ren.step, "grid step (convolve)")->capture_default_str();
  r->add_option("--format", ren.format, "csv | json")->capture_default_str();
  r->add_option("--out", ren.out, "output path (default: stdout)");

  auto* c = app.add_subcommand("compare", "Join simulation with predictions");
  c->add_option("--dist", cmp.dist, "weight law")->capture_default_str();
  c->add_option("--n", cmp.n, "number of agents")->capture_default_str();
  c->add_option("--model", cmp.model, "natural | normalized")->capture_default_str();
  c->add_option("--quota-grid", cmp.quota_grid, "quota grid")->capture_default_str();
  c->add_option("--reps", cmp.reps, "replications")->capture_default_str();
  c->add_option("--seed", cmp.seed, "RNG seed")->capture_default_str();
  c->add_option("--p", cmp.p, "also compare one interior rank fraction");
  c->add_option("--threads", cmp.threads, "worker threads (0 = hardware)")->capture_default_str();
  c->add_option("--format", cmp.format, "csv | json")->capture_default_str();
  c->add_option("--out", cmp.out, "output path (default: stdout)");

  auto* g = app.add_subcommand("recipe", "Reproduce a study dataset");
  g->add_option("name", rec.name, "fig1 | fig2 | fig3")->required();
  g->add_option("--reps", rec.reps, "replications per experiment")->capture_default_str();
  g->add_option("--seed", rec.seed, "base RNG seed")->capture_default_str();
  g->add_option("--threads", rec.threads, "worker threads (0 = hardware)")->capture_default_str();
  g->add_option("--out-dir", rec.out_dir, "output directory")->capture_default_str();

  auto* h = app.add_subcommand("shapley", "Evaluate one explicit game");
  h->add_option("--weights", sha.weights, "comma-separated positive weights")->required();
  h->add_option("--quota", sha.quota, "quota")->required();
  h->add_option("--method", sha.method, "auto | perm | subset | sample")->capture_default_str();
  h->add_option("--samples", sha.samples, "sampled permutations (sample)")->capture_default_str();
  h->add_option("--seed", sha.seed, "RNG seed (sample)")->capture_default_str();
  h->add_option("--format", sha.format, "csv | json")->capture_default_str();
  h->add_option("--out", sha.out, "output path (default: stdout)");

  auto* u = app.add_subcommand("rerun", "Replay a manifest to identical data");
  u->add_option("manifest", manifest, "manifest JSON path")->required();
  u->add_option("--out", rr_out, "override output path");
  u->add_option("--out-dir", rr_out_dir, "override output directory (recipes)");
  u->add_option("--threads", rr_threads, "override worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return 2;
  }

  try {
    wvg::RerunOverrides overrides{rr_out, rr_out_dir, rr_threads};
    return dispatch(app.get_subcommands().front()->get_name(), sim, pre, ren, cmp, rec,
                    sha, manifest, overrides);
  } catch (const wvg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wvg::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 3;
  } catch (const wvg::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
