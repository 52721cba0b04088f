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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "skg/skg.hpp"

namespace fs = std::filesystem;
using namespace skg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

// 1. Every labelled graph on n <= 6 nodes (each edge subset, random weights)
// against every partition of its nodes.
Outcome metric_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> weight(0.01, 1.0);
  double worst = 0;
  std::size_t checks = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<oracle::Labels> labels;
    std::vector<Partition> partitions;
    oracle::for_each_partition(n, [&](const oracle::Labels& l) {
      labels.push_back(l);
      partitions.push_back(oracle::to_partition(l));
    });
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) slots.push_back({i, j});
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      auto w = oracle::zeros(n);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if ((mask >> s) & 1u) {
          const auto [i, j] = slots[s];
          w[i][j] = w[j][i] = weight(rng);
        }
      }
      const auto sc = oracle::to_sc(w);
      for (std::size_t p = 0; p < partitions.size(); ++p) {
        const auto r = evaluate(sc, partitions[p], "m", 0);
        const auto& l = labels[p];
        for (double d : {r.inv_conductance - oracle::inv_conductance(w, l), r.coverage - oracle::coverage(w, l),
                         r.scaled_modularity - oracle::scaled_modularity(w, l),
                         r.performance - oracle::performance(w, l),
                         r.inv_norm_total_cut - oracle::inv_norm_total_cut(w, l)}) {
          worst = std::max(worst, std::abs(d));
        }
        ++checks;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 60.0, std::to_string(checks) + " (graph, partition) pairs, max deviation " +
                                            fmt(worst) + ", " + fmt(secs) + " s"};
}

// 2. Scaled modularity of the single community is 1/3 and of the split
// single edge is 0.
Outcome modularity_constants() {
  std::mt19937_64 rng(2);
  double worst_one = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    auto w = oracle::random_matrix(rng, n, 0.5);
    w[0][1] = w[1][0] = 0.5;  // at least one edge
    const auto sc = oracle::to_sc(w);
    const auto all = Partition::from_groups({sc.universe()}, sc.universe());
    worst_one = std::max({worst_one, std::abs(modularity(sc, all) - 1.0 / 3.0), std::abs(modularity_q(sc, all))});
  }
  RelatednessSet edge;
  edge.insert("x", "y", 1.0);
  const auto split = Partition::from_groups({{"x"}, {"y"}}, edge.universe());
  const double q = modularity_q(edge, split);
  const double scaled = modularity(edge, split);
  const bool ok = worst_one <= 1e-12 && std::abs(q + 0.5) <= 1e-12 && std::abs(scaled) <= 1e-12;
  return {ok, "single community max |scaled - 1/3| " + fmt(worst_one) + "; split edge Q " + fmt(q) + ", scaled " +
                  fmt(scaled)};
}

// 3. coverage + normalized total cut = 1.
Outcome complementarity() {
  std::mt19937_64 rng(3);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    const auto w = oracle::random_matrix(rng, n, std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const auto sc = oracle::to_sc(w);
    const auto p = oracle::to_partition(oracle::random_labels(rng, n));
    const double norm_total_cut = 1.0 - total_cut(sc, p);
    worst = std::max(worst, std::abs(coverage(sc, p) + norm_total_cut - 1.0));
  }
  return {worst <= 1e-12, "1000 instances, max |coverage + NormTotalCut - 1| " + fmt(worst)};
}

// 4. SimR/SimC symmetry and range; SimC equals a set-based Jaccard.
Outcome similarity_properties() {
  std::mt19937_64 rng(4);
  std::size_t pairs = 0;
  std::size_t failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int nv = std::uniform_int_distribution<int>(1, 20)(rng);
    const int nr = std::uniform_int_distribution<int>(1, 50)(rng);
    const int np = std::uniform_int_distribution<int>(1, 100)(rng);
    std::vector<PublicationRecord> records;
    std::map<std::string, std::set<std::string>> authors_at;
    for (int p = 0; p < np; ++p) {
      PublicationRecord rec;
      rec.paper_id = "p" + std::to_string(p);
      rec.venue_id = "v" + std::to_string(std::uniform_int_distribution<int>(0, nv - 1)(rng));
      rec.year = 2015;
      const int team = std::uniform_int_distribution<int>(1, 5)(rng);
      for (int t = 0; t < team; ++t) {
        const auto a = "r" + std::to_string(std::uniform_int_distribution<int>(0, nr - 1)(rng));
        rec.authors.push_back({a, a});
        authors_at[rec.venue_id].insert(a);
      }
      records.push_back(rec);
    }
    const auto g = build_graph(records);
    const auto venues = g.entities_of(EntityKind::Venue);
    const auto researchers = g.entities_of(EntityKind::Researcher);
    IdSet focus;
    for (const auto& v : venues) {
      if (std::uniform_int_distribution<int>(0, 1)(rng)) focus.insert(v);
    }
    for (const auto& a : venues) {
      for (const auto& b : venues) {
        const double s = sim_c(g, a, b);
        ++pairs;
        if (s != sim_c(g, b, a) || s < 0 || s > 1 || s != oracle::jaccard(authors_at[a.str()], authors_at[b.str()])) {
          ++failures;
        }
      }
    }
    for (const auto& a : researchers) {
      for (const auto& b : researchers) {
        const double s = sim_r(g, a, b, focus);
        ++pairs;
        if (s != sim_r(g, b, a, focus) || s < 0 || s > 1) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(pairs) + " ordered pairs over 100 graphs, " + std::to_string(failures) +
                             " violations"};
}

// 5. Nearest-rank counts on the crafted examples; nesting on random inputs.
Outcome percentile_behaviour() {
  auto from_values = [](const std::vector<double>& values) {
    RelatednessSet sc;
    for (std::size_t i = 0; i < values.size(); ++i) {
      sc.insert(EntityId("a" + std::to_string(i)), EntityId("b" + std::to_string(i)), values[i]);
    }
    return sc;
  };
  std::vector<double> hundred;
  for (int i = 1; i <= 100; ++i) hundred.push_back(i / 100.0);
  bool ok = percentile_threshold(from_values(hundred), 95).size() == 6;
  const auto equal = from_values(std::vector<double>(25, 0.37));
  for (int p = 1; p <= 99; ++p) ok = ok && percentile_threshold(equal, p).size() == 25;
  const std::vector<double> mixed = {0.2, 0.9, 0.4, 0.4, 0.7, 0.1, 0.55};
  ok = ok && percentile_threshold(from_values(mixed), 1).size() == mixed.size();
  const bool examples = ok;

  std::mt19937_64 rng(5);
  std::size_t nest_violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 300)(rng);
    const int levels = std::uniform_int_distribution<int>(1, 50)(rng);
    std::vector<double> values(n);
    for (auto& v : values) v = std::uniform_int_distribution<int>(1, levels)(rng) / static_cast<double>(levels);
    const auto sc = from_values(values);
    const auto r85 = percentile_threshold(sc, 85);
    const auto r90 = percentile_threshold(sc, 90);
    const auto r95 = percentile_threshold(sc, 95);
    const auto r98 = percentile_threshold(sc, 98);
    auto subset = [](const RelatednessSet& a, const RelatednessSet& b) {
      return std::all_of(a.scores().begin(), a.scores().end(), [&](const auto& e) { return b.scores().count(e.first) > 0; });
    };
    if (!subset(r98, r95) || !subset(r95, r90) || !subset(r90, r85)) ++nest_violations;
    for (int p : {85, 90, 95, 98}) {
      if (percentile_threshold(sc, p).size() != oracle::retained_count(values, p)) ++nest_violations;
    }
  }
  return {examples && nest_violations == 0, std::string("examples ") + (examples ? "exact" : "WRONG") +
                                                ", 500 random multisets, " + std::to_string(nest_violations) +
                                                " nesting/count violations"};
}

// 6. Planted recovery by both partitioners.
Outcome planted_recovery() {
  double min_ari = 1.0;
  double slowest = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PlantedSpec spec;
    spec.seed = seed;
    const auto planted = generate_planted(spec);
    PartitionerParams sem;
    sem.merge_floor = 0.6;
    PartitionerParams kw;
    kw.method = PartitionMethod::Kway;
    kw.k = 3;
    for (const auto& params : {sem, kw}) {
      const auto t0 = Clock::now();
      const auto p = run_partitioner(planted.sc, params);
      slowest = std::max(slowest, seconds_since(t0));
      min_ari = std::min(min_ari, adjusted_rand(p, planted.truth));
    }
  }
  return {min_ari == 1.0 && slowest < 5.0,
          "20 seeds x {semantic floor 0.6, kway k=3}: min ARI " + fmt(min_ari) + ", slowest run " + fmt(slowest) + " s"};
}

// 7. Prediction contracts on random pipelines.
Outcome prediction_contracts() {
  std::size_t predictions = 0;
  std::size_t violations = 0;
  std::mt19937_64 rng(7);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    CorpusSpec spec;
    spec.seed = 1000 + trial;
    spec.records = std::uniform_int_distribution<std::size_t>(20, 150)(rng);
    spec.groups = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    spec.group_size = std::uniform_int_distribution<std::size_t>(3, 9)(rng);
    spec.outsider_share = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
    const auto corpus = generate_corpus(spec);
    const auto g = build_graph(corpus.records, corpus.manifest);
    const auto observed = derive_co_author_network(g);
    const auto full = researcher_sc(g, corpus.manifest);
    if (full.empty()) continue;
    const int pct = std::array{85, 90, 95, 98}[trial % 4];
    const auto sc = percentile_threshold(full, pct);
    PartitionerParams params;
    params.method = trial % 2 ? PartitionMethod::Kway : PartitionMethod::Semantic;
    params.k = std::uniform_int_distribution<int>(1, 6)(rng);
    params.k = std::min<int>(*params.k, static_cast<int>(sc.universe().size()));
    const auto p = run_partitioner(sc, params);
    const auto label = p.assignment();
    PatternParams pattern;
    pattern.aggregator = std::array{Aggregator::Average, Aggregator::Minimum, Aggregator::Product}[trial % 3];
    const auto net = generate_patterns(p, sc, observed, pattern);
    std::map<int, double> weight;
    for (const auto& r : net.relations) {
      ++predictions;
      if (observed.contains(r.left, r.right)) ++violations;
      if (label.at(r.left) != r.community_id || label.at(r.right) != r.community_id) ++violations;
      weight.emplace(r.community_id, r.weight);
      if (weight.at(r.community_id) != r.weight) ++violations;
    }
  }
  return {violations == 0, "200 pipelines, " + std::to_string(predictions) + " predictions, " +
                               std::to_string(violations) + " contract violations"};
}

// Future pairs and candidate count straight from the record file, without
// the library's split code.
struct Baseline {
  std::size_t future = 0;
  std::size_t candidates = 0;
  double value() const { return candidates == 0 ? 0.0 : static_cast<double>(future) / static_cast<double>(candidates); }
};

Baseline analytic_baseline(const std::vector<PublicationRecord>& records, int cutoff) {
  std::set<std::string> train_people;
  std::set<std::pair<std::string, std::string>> train_pairs;
  std::set<std::pair<std::string, std::string>> later_pairs;
  for (const auto& r : records) {
    std::set<std::string> people;
    for (const auto& a : r.authors) people.insert(a.id);
    if (r.year <= cutoff) train_people.insert(people.begin(), people.end());
    for (auto i = people.begin(); i != people.end(); ++i) {
      for (auto j = std::next(i); j != people.end(); ++j) (r.year <= cutoff ? train_pairs : later_pairs).insert({*i, *j});
    }
  }
  Baseline b;
  for (const auto& [x, y] : later_pairs) {
    if (train_people.count(x) && train_people.count(y) && !train_pairs.count({x, y})) ++b.future;
  }
  const std::size_t n = train_people.size();
  b.candidates = n * (n - 1) / 2 - train_pairs.size();
  return b;
}

// 8. precision@10 at p95 against the analytic random baseline.
Outcome holdout_lift() {
  const auto t0 = Clock::now();
  std::ifstream in(fs::path(SKG_DATA_DIR) / "corpus200.jsonl", std::ios::binary);
  std::ifstream min(fs::path(SKG_DATA_DIR) / "corpus200.manifest.json", std::ios::binary);
  if (!in || !min) return {false, "bundled corpus missing"};
  const auto records = parse_records(in).records;
  const auto manifest = parse_manifest(min);
  const auto baseline = analytic_baseline(records, 2016);

  SweepConfig config;
  config.percentiles = {95};
  config.cutoff_year = 2016;
  config.top_k = 10;
  const auto result = run_sweep(records, manifest, config);
  const double secs = seconds_since(t0);
  std::ostringstream detail;
  detail << records.size() << " records, baseline " << baseline.future << "/" << baseline.candidates << " = "
         << fmt(baseline.value());
  bool pass = secs < 10.0 && baseline.value() > 0;
  for (const auto& cell : result.cells) {
    const auto& r = *cell.ranking;
    const double lift = baseline.value() > 0 ? r.precision_at_k / baseline.value() : 0.0;
    detail << "; " << to_string(cell.method) << " p@10 " << fmt(r.precision_at_k) << " (" << cell.predictions.size()
           << " predictions, lift " << fmt(lift) << ")";
    if (r.random_baseline != baseline.value()) pass = false;
    // The default partitioner is the one gated.
    if (cell.method == PartitionMethod::Semantic && lift < 3.0) pass = false;
  }
  detail << ", " << fmt(secs) << " s";
  return {pass, detail.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Two CLI sweeps over identical inputs write identical bytes.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "skg_acceptance_determinism";
  fs::remove_all(root);
  const fs::path data = SKG_DATA_DIR;
  std::vector<fs::path> outs = {root / "a", root / "b"};
  for (const auto& out : outs) {
    const std::string cmd = std::string(SKG_CLI_PATH) + " sweep --records " + (data / "corpus200.jsonl").string() +
                            " --manifest " + (data / "corpus200.manifest.json").string() +
                            " --cutoff 2016 --out " + out.string();
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "sweep exited abnormally"};
  }
  std::size_t files = 0;
  std::size_t differing = 0;
  std::set<fs::path> names[2];
  for (int i = 0; i < 2; ++i) {
    for (const auto& e : fs::recursive_directory_iterator(outs[i])) {
      if (e.is_regular_file()) names[i].insert(fs::relative(e.path(), outs[i]));
    }
  }
  for (const auto& rel : names[0]) {
    ++files;
    if (!names[1].count(rel) || slurp(outs[0] / rel) != slurp(outs[1] / rel)) ++differing;
  }
  const bool same_sets = names[0] == names[1];
  fs::remove_all(root);
  return {same_sets && differing == 0 && files > 0,
          std::to_string(files) + " files compared, " + std::to_string(differing) + " differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
      {"metric oracle equivalence (n <= 6, exhaustive)", metric_oracle},
      {"modularity constants", modularity_constants},
      {"coverage / total cut complementarity", complementarity},
      {"similarity properties", similarity_properties},
      {"percentile behaviour", percentile_behaviour},
      {"planted recovery", planted_recovery},
      {"prediction contracts", prediction_contracts},
      {"holdout lift >= 3x random at p95", holdout_lift},
      {"sweep determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
