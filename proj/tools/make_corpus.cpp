// Copyright 2026 The skg Authors.
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

// Writes a synthetic record file and its manifest.
//
//   make_corpus --out data/corpus200 --records 200 --groups 10 --group-size 6

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "skg/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic publication corpus"};
  skg::CorpusSpec spec;
  std::string out;
  app.add_option("--out", out, "Output prefix; writes <prefix>.jsonl and <prefix>.manifest.json")->required();
  app.add_option("--seed", spec.seed, "Generator seed");
  app.add_option("--records", spec.records, "Number of publications");
  app.add_option("--groups", spec.groups, "Number of latent research groups");
  app.add_option("--group-size", spec.group_size, "Researchers per group");
  app.add_option("--first-year", spec.first_year);
  app.add_option("--last-year", spec.last_year);
  app.add_option("--series", spec.series, "Venue series; the first is the focus series");
  app.add_option("--focus-share", spec.focus_share);
  app.add_option("--outsider-share", spec.outsider_share);
  app.add_option("--min-authors", spec.min_authors);
  app.add_option("--max-authors", spec.max_authors);
  CLI11_PARSE(app, argc, argv);

  try {
    const auto corpus = skg::generate_corpus(spec);
    std::ofstream records(out + ".jsonl", std::ios::binary);
    std::ofstream manifest(out + ".manifest.json", std::ios::binary);
    if (!records || !manifest) {
      std::cerr << "cannot write " << out << ".*\n";
      return 2;
    }
    for (const auto& r : corpus.records) records << skg::serialize_record(r) << '\n';
    manifest << skg::serialize_manifest(corpus.manifest) << '\n';
  } catch (const skg::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}
