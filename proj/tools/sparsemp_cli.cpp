// Copyright 2026 The sparsemp Authors
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

// Experiment runner over the sparsemp C API.
//
//   sparsemp solve  --config exp.cfg --method mpec_epm --k 30 [--out DIR]
//   sparsemp bench  --config exp.cfg [--set key=value ...] [--out DIR]
//   sparsemp report --results DIR/results.csv
//
// Exit codes: 0 full success, 2 at least one unconverged cell, 1 hard error.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsemp/sparsemp.h"

namespace {

struct KvList {
  std::vector<std::string> keys;
  std::vector<std::string> values;
  std::vector<const char*> key_ptrs;
  std::vector<const char*> value_ptrs;

  void add(const std::string& key, const std::string& value) {
    keys.push_back(key);
    values.push_back(value);
  }
  void freeze() {
    key_ptrs.clear();
    value_ptrs.clear();
    for (const auto& k : keys) key_ptrs.push_back(k.c_str());
    for (const auto& v : values) value_ptrs.push_back(v.c_str());
  }
};

int fail(smp_status status, const char* what) {
  std::fprintf(stderr, "sparsemp: %s: %s (%s)\n", what,
               smp_status_string(status), smp_last_error());
  return 1;
}

bool parse_set(const std::string& spec, KvList* kv) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  kv->add(spec.substr(0, eq), spec.substr(eq + 1));
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsity-constrained minimization benchmark runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string method;
  std::string k_value;
  std::string seed_value;
  std::string results_path;
  std::vector<std::string> overrides;
  int jobs = 1;

  CLI::App* solve = app.add_subcommand("solve", "run one problem with one method");
  solve->add_option("--config", config_path, "experiment config file");
  solve->add_option("--method", method, "solver name")->required();
  solve->add_option("--k", k_value, "sparsity budget (absolute, or fraction with a dot)");
  solve->add_option("--seed", seed_value, "seed override");
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--set", overrides, "extra key=value overrides");

  CLI::App* bench = app.add_subcommand("bench", "run the (method, k, seed) grid");
  bench->add_option("--config", config_path, "experiment config file");
  bench->add_option("--seed", seed_value, "seed override");
  bench->add_option("--jobs", jobs, "parallel cells");
  bench->add_option("--out", out_dir, "output directory");
  bench->add_option("--set", overrides, "extra key=value overrides");

  CLI::App* report = app.add_subcommand("report", "aggregate a results.csv");
  report->add_option("--results", results_path, "path to results.csv")->required();

  CLI11_PARSE(app, argc, argv);

  if (report->parsed()) {
    char* text = nullptr;
    const smp_status st = smp_report_render(results_path.c_str(), &text);
    if (st != SMP_OK) return fail(st, "report");
    std::fputs(text, stdout);
    smp_string_free(text);
    return 0;
  }

  KvList kv;
  for (const std::string& spec : overrides) {
    if (!parse_set(spec, &kv)) {
      std::fprintf(stderr, "sparsemp: bad --set '%s' (want key=value)\n",
                   spec.c_str());
      return 1;
    }
  }
  if (!seed_value.empty()) kv.add("seed", seed_value);
  if (bench->parsed() && jobs > 1) kv.add("jobs", std::to_string(jobs));
  if (solve->parsed()) {
    kv.add("methods", method);
    if (!k_value.empty()) kv.add("k_grid", k_value);
    kv.add("seeds", "1");
  }
  kv.freeze();

  int any_unconverged = 0;
  smp_status st;
  if (!config_path.empty()) {
    st = smp_bench_run_file(config_path.c_str(), kv.key_ptrs.data(),
                            kv.value_ptrs.data(), kv.keys.size(),
                            out_dir.c_str(), &any_unconverged);
  } else {
    st = smp_bench_run(kv.key_ptrs.data(), kv.value_ptrs.data(), kv.keys.size(),
                       out_dir.c_str(), &any_unconverged);
  }
  if (st != SMP_OK) return fail(st, bench->parsed() ? "bench" : "solve");

  if (solve->parsed()) {
    // Echo the single results row.
    const std::string results = out_dir + "/results.csv";
    if (FILE* f = std::fopen(results.c_str(), "r")) {
      char buf[4096];
      while (std::fgets(buf, sizeof(buf), f)) std::fputs(buf, stdout);
      std::fclose(f);
    }
  } else {
    std::printf("wrote %s/results.csv\n", out_dir.c_str());
  }
  return any_unconverged ? 2 : 0;
}
