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

// Reproducible evaluation: temporal holdout, ranking metrics, planted
// community generation and partition agreement.

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "skg/error.hpp"
#include "skg/graph.hpp"
#include "skg/ingest.hpp"
#include "skg/partition.hpp"
#include "skg/predict.hpp"
#include "skg/relatedness.hpp"
#include "skg/text.hpp"

namespace skg {

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Temporal holdout

struct HoldoutSplit {
  int cutoff_year = 0;
  ScholarlyKnowledgeGraph train_graph;
  CoAuthorNetwork observed;
  // Researcher pairs (both present in the train graph) who first co-author
  // after the cutoff.
  std::set<IdPair> future_edges;
  // Non-observed researcher pairs of the train graph.
  std::size_t candidate_pairs = 0;
};

inline HoldoutSplit temporal_split(const std::vector<PublicationRecord>& records, int cutoff_year,
                                   const DatasetManifest& manifest = {}) {
  std::vector<PublicationRecord> train;
  std::vector<PublicationRecord> test;
  for (const auto& r : records) (r.year <= cutoff_year ? train : test).push_back(r);
  if (train.empty() || test.empty()) {
    throw Error(Errc::DegenerateSplit, "cutoff " + std::to_string(cutoff_year) + " leaves " +
                                           (train.empty() ? "no training" : "no future") + " records");
  }
  HoldoutSplit split;
  split.cutoff_year = cutoff_year;
  split.train_graph = build_graph(std::move(train), manifest);
  split.observed = derive_co_author_network(split.train_graph);
  for (const auto& rec : test) {
    std::set<EntityId> authors;
    for (const auto& a : rec.authors) {
      EntityId id(a.id);
      if (split.train_graph.contains(id) && split.train_graph.kind_of(id) == EntityKind::Researcher) {
        authors.insert(std::move(id));
      }
    }
    for (auto i = authors.begin(); i != authors.end(); ++i) {
      for (auto j = std::next(i); j != authors.end(); ++j) {
        if (!split.observed.contains(*i, *j)) split.future_edges.insert(IdPair{*i, *j});
      }
    }
  }
  const std::size_t n = split.observed.researchers.size();
  split.candidate_pairs = n * (n - (n > 0)) / 2 - split.observed.edges.size();
  return split;
}

struct RankingReport {
  std::size_t k = 0;
  double precision_at_k = 0;
  double recall_at_k = 0;
  double random_baseline = 0;
  std::size_t hits = 0;
  std::size_t future_edges = 0;
  std::size_t candidate_pairs = 0;
};

/// precision@k divides by k even when fewer than k predictions exist.
inline RankingReport rank_eval(const PredictedNetwork& predictions, const HoldoutSplit& split, std::size_t k) {
  if (k < 1) throw Error(Errc::InvalidParameter, "k must be at least 1");
  if (predictions.empty()) throw Error(Errc::NoPredictions, "prediction set is empty");
  RankingReport r;
  r.k = k;
  r.future_edges = split.future_edges.size();
  r.candidate_pairs = split.candidate_pairs;
  const std::size_t top = std::min(k, predictions.size());
  for (std::size_t i = 0; i < top; ++i) {
    const auto& p = predictions.relations[i];
    if (split.future_edges.count(IdPair::of(p.left, p.right))) ++r.hits;
  }
  r.precision_at_k = static_cast<double>(r.hits) / static_cast<double>(k);
  r.recall_at_k = r.future_edges == 0 ? 0.0 : static_cast<double>(r.hits) / static_cast<double>(r.future_edges);
  r.random_baseline =
      r.candidate_pairs == 0 ? 0.0 : static_cast<double>(r.future_edges) / static_cast<double>(r.candidate_pairs);
  return r;
}

inline constexpr std::string_view kRankingHeader =
    "method,percentile,k,precision_at_k,recall_at_k,random_baseline,hits,future_edges,candidate_pairs";

inline void write_ranking_row(std::string_view method, int percentile, const RankingReport& r, std::ostream& out) {
  out << method << ',' << percentile << ',' << r.k << ',' << format_double(r.precision_at_k) << ','
      << format_double(r.recall_at_k) << ',' << format_double(r.random_baseline) << ',' << r.hits << ','
      << r.future_edges << ',' << r.candidate_pairs << '\n';
}

// ---------------------------------------------------------------------------
// Planted communities

struct PlantedSpec {
  std::size_t n_entities = 60;
  std::size_t n_communities = 3;
  double intra_lo = 0.7;
  double intra_hi = 0.9;
  double inter_lo = 0.0;
  double inter_hi = 0.2;
  std::uint64_t seed = 0;
};

struct PlantedGraph {
  RelatednessSet sc;
  Partition truth;
};

/// Entities `e00..` split into contiguous, evenly sized blocks; every pair is
/// scored uniformly from the intra or inter range, in canonical pair order.
inline PlantedGraph generate_planted(const PlantedSpec& spec) {
  auto valid_range = [](double lo, double hi) { return 0.0 <= lo && lo <= hi && hi <= 1.0; };
  if (spec.n_communities < 1 || spec.n_entities < spec.n_communities ||
      !valid_range(spec.intra_lo, spec.intra_hi) || !valid_range(spec.inter_lo, spec.inter_hi) ||
      !(spec.intra_lo > spec.inter_hi)) {
    throw Error(Errc::InvalidSpec, "planted spec violates its invariants");
  }
  const std::size_t width = std::to_string(spec.n_entities - 1).size();
  std::vector<EntityId> ids;
  std::vector<std::size_t> block;
  for (std::size_t i = 0; i < spec.n_entities; ++i) {
    std::string digits = std::to_string(i);
    ids.emplace_back("e" + std::string(width - digits.size(), '0') + digits);
    block.push_back(i * spec.n_communities / spec.n_entities);
  }
  std::mt19937_64 rng(spec.seed);
  PlantedGraph out{RelatednessSet(EntityKind::Researcher), {}};
  for (const auto& id : ids) out.sc.add_to_universe(id);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      const bool same = block[i] == block[j];
      const double s = same ? uniform_in(rng, spec.intra_lo, spec.intra_hi)
                            : uniform_in(rng, spec.inter_lo, spec.inter_hi);
      out.sc.insert(ids[i], ids[j], s);
    }
  }
  std::map<EntityId, std::size_t> labels;
  for (std::size_t i = 0; i < ids.size(); ++i) labels.emplace(ids[i], block[i]);
  out.truth = Partition::from_labels(labels);
  return out;
}

/// Adjusted Rand index (Hubert-Arabie). Two identical trivial partitions,
/// where the index is undefined, score 1.
inline double adjusted_rand(const Partition& found, const Partition& truth) {
  if (found.universe() != truth.universe()) throw Error(Errc::UniverseMismatch, "partitions cover different universes");
  const auto a = found.assignment();
  const auto b = truth.assignment();
  std::map<std::pair<int, int>, double> cells;
  std::map<int, double> rows;
  std::map<int, double> cols;
  for (const auto& [id, la] : a) {
    const int lb = b.at(id);
    cells[{la, lb}] += 1;
    rows[la] += 1;
    cols[lb] += 1;
  }
  auto choose2 = [](double x) { return x * (x - 1) / 2; };
  double index = 0;
  for (const auto& [cell, c] : cells) index += choose2(c);
  double sum_rows = 0;
  double sum_cols = 0;
  for (const auto& [l, c] : rows) sum_rows += choose2(c);
  for (const auto& [l, c] : cols) sum_cols += choose2(c);
  const double total = choose2(static_cast<double>(a.size()));
  const double expected = total == 0 ? 0.0 : sum_rows * sum_cols / total;
  const double max_index = (sum_rows + sum_cols) / 2;
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace skg
