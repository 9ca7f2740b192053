// Copyright 2026 The conjbar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the conjugate-gradient benchmark grid and prints a table.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "conjbar/conjbar.h"

namespace {

const std::map<std::string, conjbar_family> kFamilies = {
    {"log", CONJBAR_LOG},       {"logdet", CONJBAR_LOGDET}, {"hpower", CONJBAR_HPOWER},
    {"hgeom", CONJBAR_HGEOM},   {"rtdet", CONJBAR_RTDET},   {"rpower", CONJBAR_RPOWER},
    {"rgeom", CONJBAR_RGEOM},   {"linf", CONJBAR_LINF},     {"lspec", CONJBAR_LSPEC},
};

}  // namespace

int main(int argc, char** argv) {
  conjbar_experiment_config defaults;
  conjbar_experiment_config_default(&defaults);

  std::vector<std::string> cone_names = {"log", "hpower", "hgeom", "rpower", "rgeom", "linf"};
  std::vector<int> dims(defaults.dims, defaults.dims + defaults.num_dims);
  std::vector<double> offsets(defaults.offsets, defaults.offsets + defaults.num_offsets);
  int trials = defaults.trials;
  std::uint64_t seed = defaults.seed;
  double eps = defaults.eps;
  std::string format = "csv";
  std::string out_path;
  int rpower_d1 = defaults.rpower_d1;
  int threads = 1;

  CLI::App app{"Compare specialized and generic conjugate-gradient oracles"};
  app.add_option("--cones", cone_names, "Cone families (log logdet hpower hgeom rtdet rpower "
                                        "rgeom linf lspec)")
      ->delimiter(',')
      ->check(CLI::IsMember(kFamilies));
  app.add_option("--dims", dims, "Dimensions d")->delimiter(',');
  app.add_option("--offsets", offsets, "Boundary offsets o in (0, 1)")->delimiter(',');
  app.add_option("--trials", trials, "Random points per cell");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--eps", eps, "Generic Newton tolerance on the local norm");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "markdown"}));
  app.add_option("--out", out_path, "Write the table to this file instead of stdout");
  app.add_option("--rpower-d1", rpower_d1, "Length of the p block for rpower/rgeom");
  app.add_option("--threads", threads, "Worker threads");
  CLI11_PARSE(app, argc, argv);

  std::vector<conjbar_family> cones;
  for (const auto& name : cone_names) cones.push_back(kFamilies.at(name));

  conjbar_experiment_config config = defaults;
  config.cones = cones.data();
  config.num_cones = cones.size();
  config.dims = dims.data();
  config.num_dims = dims.size();
  config.offsets = offsets.data();
  config.num_offsets = offsets.size();
  config.trials = trials;
  config.seed = seed;
  config.eps = eps;
  config.rpower_d1 = rpower_d1;
  config.threads = threads;

  conjbar_experiment* exp = nullptr;
  conjbar_status st = conjbar_experiment_run(&config, &exp);
  if (st != CONJBAR_OK) {
    std::cerr << "error: " << conjbar_last_error() << "\n";
    return 2;
  }
  char* text = nullptr;
  st = conjbar_experiment_render(
      exp, format == "markdown" ? CONJBAR_FORMAT_MARKDOWN : CONJBAR_FORMAT_CSV, &text);
  conjbar_experiment_destroy(exp);
  if (st != CONJBAR_OK) {
    std::cerr << "error: " << conjbar_last_error() << "\n";
    return 2;
  }

  int rc = 0;
  if (out_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      rc = 2;
    }
  }
  conjbar_string_free(text);
  return rc;
}
