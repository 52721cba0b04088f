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

// End-to-end composition: records -> graph -> SC -> thresholded SC ->
// partition -> metrics and predictions, swept over methods and percentiles.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "skg/evaluation.hpp"
#include "skg/graph.hpp"
#include "skg/ingest.hpp"
#include "skg/metrics.hpp"
#include "skg/partition.hpp"
#include "skg/predict.hpp"
#include "skg/relatedness.hpp"

namespace skg {

/// Error raised by a pipeline stage; what() names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "stage " + stage + ": " + cause.what()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

template <class F>
auto run_stage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

struct SweepConfig {
  std::vector<PartitionMethod> methods = {PartitionMethod::Semantic, PartitionMethod::Kway};
  std::vector<int> percentiles = {85, 90, 95, 98};
  Aggregator aggregator = Aggregator::Average;
  WeightScope scope = WeightScope::Community;
  double min_weight = 0.0;
  int parts = 3;                     // k for the kway partitioner
  std::optional<double> merge_floor; // semantic; defaults to the percentile cutoff
  std::optional<int> cutoff_year;    // enables temporal holdout
  std::size_t top_k = 10;
  MetricOptions metrics;
};

struct CellResult {
  PartitionMethod method = PartitionMethod::Semantic;
  int percentile = 0;
  RelatednessSet sc;
  Partition partition;
  PredictedNetwork predictions;
  PartitionQualityReport report;
  std::optional<RankingReport> ranking;
};

struct SweepResult {
  std::vector<CellResult> cells;
  std::optional<HoldoutSplit> split;
};

inline RelatednessSet researcher_sc(const ScholarlyKnowledgeGraph& graph, const DatasetManifest& manifest) {
  return run_stage("similarity", [&] {
    SimilarityParams params;
    params.focus_series = manifest.focus_venue_series;
    return compute_sc(graph, EntityKind::Researcher, SimilarityMethod::SimR, params);
  });
}

/// One (method, percentile) cell on an already computed researcher SC.
inline CellResult run_cell(const RelatednessSet& full_sc, const CoAuthorNetwork& observed, PartitionMethod method,
                           int percentile, const SweepConfig& config) {
  CellResult cell;
  cell.method = method;
  cell.percentile = percentile;
  cell.sc = run_stage("threshold", [&] { return percentile_threshold(full_sc, percentile); });
  cell.partition = run_stage("partition", [&] {
    PartitionerParams params;
    params.method = method;
    params.k = config.parts;
    params.merge_floor = config.merge_floor;
    return run_partitioner(cell.sc, params);
  });
  cell.report = run_stage("evaluate", [&] {
    return evaluate(cell.sc, cell.partition, std::string(to_string(method)), percentile, config.metrics);
  });
  cell.predictions = run_stage("predict", [&] {
    return generate_patterns(cell.partition, cell.sc, observed,
                             PatternParams{config.aggregator, config.min_weight, config.scope});
  });
  return cell;
}

/// Runs every (method, percentile) cell. With a cutoff year the graph is the
/// training side of a temporal split and each cell is also ranked against the
/// future co-authorships; a cell without predictions ranks with zero hits.
inline SweepResult run_sweep(const std::vector<PublicationRecord>& records, const DatasetManifest& manifest,
                             const SweepConfig& config) {
  SweepResult result;
  std::optional<ScholarlyKnowledgeGraph> full_graph;
  if (config.cutoff_year) {
    result.split = run_stage("holdout", [&] { return temporal_split(records, *config.cutoff_year, manifest); });
  } else {
    full_graph = run_stage("ingest", [&] { return build_graph(records, manifest); });
  }
  const ScholarlyKnowledgeGraph& graph = result.split ? result.split->train_graph : *full_graph;
  const CoAuthorNetwork observed = result.split ? result.split->observed : derive_co_author_network(graph);
  const RelatednessSet full_sc = researcher_sc(graph, manifest);

  for (auto method : config.methods) {
    for (int p : config.percentiles) {
      CellResult cell = run_cell(full_sc, observed, method, p, config);
      if (result.split) {
        if (cell.predictions.empty()) {
          RankingReport empty;
          empty.k = config.top_k;
          empty.future_edges = result.split->future_edges.size();
          empty.candidate_pairs = result.split->candidate_pairs;
          empty.random_baseline = empty.candidate_pairs == 0
                                      ? 0.0
                                      : static_cast<double>(empty.future_edges) / static_cast<double>(empty.candidate_pairs);
          cell.ranking = empty;
        } else {
          cell.ranking = run_stage("holdout", [&] { return rank_eval(cell.predictions, *result.split, config.top_k); });
        }
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

inline std::string cell_dir_name(const CellResult& cell) {
  return std::string(to_string(cell.method)) + "-p" + std::to_string(cell.percentile);
}

/// Layout: <dir>/<method>-p<P>/{sc,partition,predictions}.tsv, <dir>/report.csv
/// and, with a holdout, <dir>/holdout.csv.
inline void write_sweep(const SweepResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  auto open = [](const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + path.string());
    return out;
  };
  fs::create_directories(dir);
  auto report = open(dir / "report.csv");
  report << kReportHeader << '\n';
  std::optional<std::ofstream> holdout;
  if (result.split) {
    holdout = open(dir / "holdout.csv");
    *holdout << kRankingHeader << '\n';
  }
  for (const auto& cell : result.cells) {
    const auto cell_dir = dir / cell_dir_name(cell);
    fs::create_directories(cell_dir);
    {
      auto out = open(cell_dir / "sc.tsv");
      write_scores(cell.sc, out);
    }
    {
      auto out = open(cell_dir / "partition.tsv");
      write_partition(cell.partition, out);
    }
    {
      auto out = open(cell_dir / "predictions.tsv");
      write_predictions(cell.predictions, out);
    }
    write_report_row(cell.report, report);
    if (holdout && cell.ranking) write_ranking_row(to_string(cell.method), cell.percentile, *cell.ranking, *holdout);
  }
}

}  // namespace skg
