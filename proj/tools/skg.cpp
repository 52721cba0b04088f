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

// Command line front end. Each subcommand is one library stage; `sweep` runs
// them all. Exit codes: 0 ok, 2 bad configuration, 3 ingest failure,
// 4 pipeline failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skg/skg.hpp"

namespace {

constexpr int kBadConfig = 2;
constexpr int kIngestFailure = 3;
constexpr int kPipelineFailure = 4;

struct Failure {
  int code;
  std::string message;
};

std::ifstream open_input(const std::string& path, const std::string& what) {
  if (!std::filesystem::is_regular_file(path)) throw Failure{kBadConfig, what + " not found: " + path};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kBadConfig, what + " not readable: " + path};
  return in;
}

// Writes to `path`, or to stdout when it is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty()) {
      std::filesystem::create_directories(parent);
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw Failure{kPipelineFailure, "cannot write " + path};
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Dataset {
  std::vector<skg::PublicationRecord> records;
  skg::DatasetManifest manifest;
};

Dataset load_dataset(const std::string& records_path, const std::string& manifest_path) {
  Dataset d;
  auto in = open_input(records_path, "records file");
  std::optional<std::ifstream> manifest_in;
  if (!manifest_path.empty()) manifest_in = open_input(manifest_path, "manifest file");
  try {
    auto parsed = skg::parse_records(in);
    for (const auto& diag : parsed.diagnostics) {
      std::cerr << records_path << ":" << diag.line << ": skipped: " << diag.reason << '\n';
    }
    if (parsed.records.empty() && !parsed.diagnostics.empty()) {
      throw Failure{kIngestFailure, "ingest: no valid records in " + records_path};
    }
    d.records = std::move(parsed.records);
    if (manifest_in) d.manifest = skg::parse_manifest(*manifest_in);
  } catch (const skg::Error& e) {
    throw Failure{kIngestFailure, "ingest: " + std::string(e.what())};
  }
  return d;
}

skg::ScholarlyKnowledgeGraph graph_of(const Dataset& d) {
  try {
    return skg::build_graph(d.records, d.manifest);
  } catch (const skg::Error& e) {
    throw Failure{kIngestFailure, "ingest: " + std::string(e.what())};
  }
}

skg::RelatednessSet load_sc(const std::string& path, skg::EntityKind kind) {
  auto in = open_input(path, "score file");
  try {
    return skg::read_scores(in, kind);
  } catch (const skg::Error& e) {
    throw Failure{kBadConfig, path + ": " + e.what()};
  }
}

skg::Partition load_partition(const std::string& path) {
  auto in = open_input(path, "partition file");
  try {
    return skg::read_partition(in);
  } catch (const skg::Error& e) {
    throw Failure{kBadConfig, path + ": " + e.what()};
  }
}

// Maps the user-facing names onto library enums. CLI11 has already checked
// membership, so lookups cannot fail.
const std::map<std::string, skg::EntityKind> kKinds = {
    {"researcher", skg::EntityKind::Researcher}, {"venue", skg::EntityKind::Venue},
    {"publication", skg::EntityKind::Publication}};
const std::map<std::string, skg::WeightScope> kScopes = {{"community", skg::WeightScope::Community},
                                                         {"pair", skg::WeightScope::PairLocal}};
const std::map<std::string, skg::ConductanceAggregate> kConductance = {
    {"mean", skg::ConductanceAggregate::Mean}, {"max", skg::ConductanceAggregate::Max}};
const std::vector<std::string> kMethods = {"semantic", "kway"};
const std::vector<std::string> kAggregators = {"avg", "min", "product"};

// Options shared by several subcommands.
struct DataOptions {
  std::string records;
  std::string manifest;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--records", records, "Line-delimited publication records");
    if (required) opt->required();
    cmd->add_option("--manifest", manifest, "Dataset manifest (focus venue series)");
  }
};

struct MetricFlags {
  std::string conductance = "mean";
  double threshold = 0.0;
  bool inclusive = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--conductance", conductance, "Conductance aggregate over communities")
        ->check(CLI::IsMember({"mean", "max"}));
    cmd->add_option("--relationship-threshold", threshold, "Score above which a pair counts as related");
    cmd->add_flag("--inclusive-threshold", inclusive, "Count scores equal to the threshold as related");
  }
  skg::MetricOptions get() const { return {kConductance.at(conductance), threshold, inclusive}; }
};

struct PredictFlags {
  std::string aggregator = "avg";
  std::string scope = "community";
  double min_weight = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--aggregator", aggregator, "Weight of connectivity")->check(CLI::IsMember(kAggregators));
    cmd->add_option("--scope", scope, "Scores feeding a pair's weight")
        ->check(CLI::IsMember({"community", "pair"}));
    cmd->add_option("--min-weight", min_weight, "Drop predictions below this weight")->check(CLI::Range(0.0, 1.0));
  }
  skg::PatternParams get() const {
    return {skg::parse_aggregator(aggregator), min_weight, kScopes.at(scope)};
  }
};

// Adds every entity of `kind` in the dataset to the SC universe, so that
// partitions also cover entities without retained scores.
void widen_universe(skg::RelatednessSet& sc, const std::string& records, const std::string& manifest) {
  if (records.empty()) return;
  const auto graph = graph_of(load_dataset(records, manifest));
  for (const auto& id : graph.entities_of(sc.kind())) sc.add_to_universe(id);
}

template <class F>
auto pipeline(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const skg::Error& e) {
    throw Failure{kPipelineFailure, e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scholarly knowledge graph toolkit: relatedness, communities and co-author patterns"};
  app.set_config("--config", "", "TOML or INI file with default flag values; flags given on the command line win");
  app.require_subcommand(1);

  // ingest
  DataOptions ingest_data;
  std::string triples_out;
  auto* ingest = app.add_subcommand("ingest", "Parse records, build the graph and print a summary");
  ingest_data.attach(ingest, true);
  ingest->add_option("--triples", triples_out, "Also export the graph as tab-separated triples");

  // similarity
  DataOptions sim_data;
  std::string sim_method;
  std::string sim_kind;
  std::optional<int> sim_percentile;
  int sim_max_len = 2;
  std::string sim_scores;
  std::vector<std::string> sim_focus;
  std::string sim_out;
  auto* similarity = app.add_subcommand("similarity", "Score same-kind entity pairs");
  sim_data.attach(similarity, true);
  similarity->add_option("--method", sim_method, "Relatedness measure")
      ->required()
      ->check(CLI::IsMember({"simr", "simc", "path", "external"}));
  similarity->add_option("--kind", sim_kind, "Entity kind (default: researcher, venue for simc)")
      ->check(CLI::IsMember({"researcher", "venue", "publication"}));
  similarity->add_option("--percentile", sim_percentile, "Keep scores at or above this nearest-rank percentile")
      ->check(CLI::Range(1, 99));
  similarity->add_option("--max-len", sim_max_len, "Path length bound for the path measure")
      ->check(CLI::IsMember({2, 4}));
  similarity->add_option("--scores", sim_scores, "Scored pairs for the external method");
  similarity->add_option("--focus", sim_focus, "Focus venue ids for simr (default: manifest)");
  similarity->add_option("--out", sim_out, "Output score file (default: stdout)");

  // partition
  std::string part_in;
  std::string part_method = "semantic";
  std::optional<int> part_k;
  std::optional<double> part_floor;
  std::uint64_t part_seed = 0;
  double part_tolerance = 0.1;
  int part_iters = 20;
  std::string part_kind = "researcher";
  DataOptions part_data;
  std::string part_out;
  auto* partition = app.add_subcommand("partition", "Split the scored entities into communities");
  partition->add_option("--in", part_in, "Score file")->required();
  partition->add_option("--method", part_method, "Partitioner")->check(CLI::IsMember(kMethods));
  partition->add_option("--k", part_k, "Number of parts (required for kway)")->check(CLI::PositiveNumber);
  partition->add_option("--merge-floor", part_floor, "Semantic merge floor (default: smallest score)")
      ->check(CLI::Range(0.0, 1.0));
  partition->add_option("--seed", part_seed, "Seed (the partitioners are deterministic)");
  partition->add_option("--balance-tolerance", part_tolerance, "Kway size tolerance")->check(CLI::Range(0.0, 1.0));
  partition->add_option("--max-refine-iters", part_iters, "Kway refinement passes")->check(CLI::NonNegativeNumber);
  partition->add_option("--kind", part_kind, "Kind of the scored entities")
      ->check(CLI::IsMember({"researcher", "venue", "publication"}));
  part_data.attach(partition, false);
  partition->add_option("--out", part_out, "Output partition file (default: stdout)");

  // evaluate
  std::string eval_in;
  std::string eval_partition;
  std::string eval_label = "semantic";
  int eval_percentile = 0;
  MetricFlags eval_metrics;
  std::string eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Quality metrics of a partition");
  evaluate->add_option("--in", eval_in, "Score file")->required();
  evaluate->add_option("--partition", eval_partition, "Partition file")->required();
  evaluate->add_option("--method", eval_label, "Method label written to the report");
  evaluate->add_option("--percentile", eval_percentile, "Percentile label written to the report");
  eval_metrics.attach(evaluate);
  evaluate->add_option("--out", eval_out, "Output CSV (default: stdout)");

  // predict
  DataOptions pred_data;
  std::string pred_in;
  std::string pred_partition;
  std::optional<int> pred_cutoff;
  PredictFlags pred_flags;
  std::string pred_out;
  auto* predict = app.add_subcommand("predict", "Predict co-author relations inside communities");
  pred_data.attach(predict, true);
  predict->add_option("--in", pred_in, "Score file")->required();
  predict->add_option("--partition", pred_partition, "Partition file")->required();
  predict->add_option("--cutoff", pred_cutoff, "Observe only records up to this year");
  pred_flags.attach(predict);
  predict->add_option("--out", pred_out, "Output prediction file (default: stdout)");

  // holdout
  DataOptions hold_data;
  int hold_cutoff = 0;
  std::size_t hold_k = 10;
  std::string hold_predictions;
  std::string hold_method = "semantic";
  int hold_percentile = 95;
  int hold_parts = 3;
  std::optional<double> hold_floor;
  PredictFlags hold_flags;
  std::string hold_out;
  auto* holdout = app.add_subcommand("holdout", "Rank predictions against co-authorships after a cutoff year");
  hold_data.attach(holdout, true);
  holdout->add_option("--cutoff", hold_cutoff, "Last training year (inclusive)")->required();
  holdout->add_option("--k", hold_k, "Ranking depth")->check(CLI::PositiveNumber);
  holdout->add_option("--predictions", hold_predictions, "Rank this prediction file instead of running the pipeline");
  holdout->add_option("--method", hold_method, "Partitioner")->check(CLI::IsMember(kMethods));
  holdout->add_option("--percentile", hold_percentile, "Score percentile")->check(CLI::Range(1, 99));
  holdout->add_option("--parts", hold_parts, "k for the kway partitioner")->check(CLI::PositiveNumber);
  holdout->add_option("--merge-floor", hold_floor, "Semantic merge floor")->check(CLI::Range(0.0, 1.0));
  hold_flags.attach(holdout);
  holdout->add_option("--out", hold_out, "Output CSV (default: stdout)");

  // sweep
  DataOptions sweep_data;
  std::vector<std::string> sweep_methods = kMethods;
  skg::SweepConfig sweep_config;
  std::optional<int> sweep_cutoff;
  PredictFlags sweep_flags;
  MetricFlags sweep_metrics;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Run every stage over methods and percentiles");
  sweep_data.attach(sweep, true);
  sweep->add_option("--methods", sweep_methods, "Partitioners")->check(CLI::IsMember(kMethods));
  sweep->add_option("--percentiles", sweep_config.percentiles, "Score percentiles")->check(CLI::Range(1, 99));
  sweep->add_option("--parts", sweep_config.parts, "k for the kway partitioner")->check(CLI::PositiveNumber);
  sweep->add_option("--merge-floor", sweep_config.merge_floor, "Semantic merge floor")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--cutoff", sweep_cutoff, "Also rank each cell against records after this year");
  sweep->add_option("--k", sweep_config.top_k, "Ranking depth")->check(CLI::PositiveNumber);
  sweep_flags.attach(sweep);
  sweep_metrics.attach(sweep);
  sweep->add_option("--out", sweep_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kBadConfig;
  }

  try {
    if (*ingest) {
      const auto data = load_dataset(ingest_data.records, ingest_data.manifest);
      const auto graph = graph_of(data);
      std::cout << "records\t" << data.records.size() << '\n'
                << "researchers\t" << graph.count(skg::EntityKind::Researcher) << '\n'
                << "publications\t" << graph.count(skg::EntityKind::Publication) << '\n'
                << "venues\t" << graph.count(skg::EntityKind::Venue) << '\n'
                << "edges\t" << graph.edge_count() << '\n'
                << "co-author pairs\t" << skg::derive_co_author_network(graph).edges.size() << '\n';
      if (!triples_out.empty()) {
        Output out(triples_out);
        skg::export_triples(graph, out.get());
      }
      return 0;
    }

    if (*similarity) {
      const auto method = skg::parse_similarity_method(sim_method);
      const auto kind = sim_kind.empty()
                            ? (method == skg::SimilarityMethod::SimC ? skg::EntityKind::Venue : skg::EntityKind::Researcher)
                            : kKinds.at(sim_kind);
      if (method == skg::SimilarityMethod::External && sim_scores.empty()) {
        throw Failure{kBadConfig, "--scores is required for the external method"};
      }
      const auto data = load_dataset(sim_data.records, sim_data.manifest);
      const auto graph = graph_of(data);
      skg::SimilarityParams params;
      params.focus_series = data.manifest.focus_venue_series;
      if (!sim_focus.empty()) {
        params.focus_series.clear();
        for (const auto& v : sim_focus) params.focus_series.insert(skg::EntityId(v));
      }
      params.max_len = sim_max_len;
      if (method == skg::SimilarityMethod::External) {
        auto in = open_input(sim_scores, "score file");
        try {
          params.external = skg::read_score_triples(in);
        } catch (const skg::Error& e) {
          throw Failure{kBadConfig, sim_scores + ": " + e.what()};
        }
      }
      auto sc = pipeline([&] {
        auto full = skg::compute_sc(graph, kind, method, params);
        return sim_percentile ? skg::percentile_threshold(full, *sim_percentile) : full;
      });
      Output out(sim_out);
      skg::write_scores(sc, out.get());
      return 0;
    }

    if (*partition) {
      skg::PartitionerParams params;
      params.method = skg::parse_partition_method(part_method);
      params.k = part_k;
      params.merge_floor = part_floor;
      params.seed = part_seed;
      params.balance_tolerance = part_tolerance;
      params.max_refine_iters = part_iters;
      if (params.method == skg::PartitionMethod::Kway && !part_k) {
        throw Failure{kBadConfig, "--k is required for --method kway"};
      }
      auto sc = load_sc(part_in, kKinds.at(part_kind));
      widen_universe(sc, part_data.records, part_data.manifest);
      const auto p = pipeline([&] { return skg::run_partitioner(sc, params); });
      Output out(part_out);
      skg::write_partition(p, out.get());
      return 0;
    }

    if (*evaluate) {
      const auto sc = load_sc(eval_in, skg::EntityKind::Researcher);
      const auto p = load_partition(eval_partition);
      const auto report = pipeline([&] { return skg::evaluate(sc, p, eval_label, eval_percentile, eval_metrics.get()); });
      Output out(eval_out);
      out.get() << skg::kReportHeader << '\n';
      skg::write_report_row(report, out.get());
      return 0;
    }

    if (*predict) {
      const auto params = pred_flags.get();
      auto data = load_dataset(pred_data.records, pred_data.manifest);
      if (pred_cutoff) std::erase_if(data.records, [&](const auto& r) { return r.year > *pred_cutoff; });
      const auto observed = skg::derive_co_author_network(graph_of(data));
      const auto sc = load_sc(pred_in, skg::EntityKind::Researcher);
      const auto p = load_partition(pred_partition);
      const auto net = pipeline([&] { return skg::generate_patterns(p, sc, observed, params); });
      Output out(pred_out);
      skg::write_predictions(net, out.get());
      return 0;
    }

    if (*holdout) {
      const auto data = load_dataset(hold_data.records, hold_data.manifest);
      std::optional<skg::RankingReport> report;
      if (!hold_predictions.empty()) {
        auto in = open_input(hold_predictions, "prediction file");
        skg::PredictedNetwork net;
        try {
          net = skg::read_predictions(in);
        } catch (const skg::Error& e) {
          throw Failure{kBadConfig, hold_predictions + ": " + e.what()};
        }
        report = pipeline([&] {
          const auto split = skg::temporal_split(data.records, hold_cutoff, data.manifest);
          return skg::rank_eval(net, split, hold_k);
        });
      } else {
        skg::SweepConfig config;
        config.methods = {skg::parse_partition_method(hold_method)};
        config.percentiles = {hold_percentile};
        config.parts = hold_parts;
        config.merge_floor = hold_floor;
        config.cutoff_year = hold_cutoff;
        config.top_k = hold_k;
        const auto params = hold_flags.get();
        config.aggregator = params.aggregator;
        config.scope = params.scope;
        config.min_weight = params.min_weight;
        report = pipeline([&] { return skg::run_sweep(data.records, data.manifest, config).cells.front().ranking; });
      }
      Output out(hold_out);
      out.get() << skg::kRankingHeader << '\n';
      skg::write_ranking_row(hold_method, hold_percentile, *report, out.get());
      return 0;
    }

    if (*sweep) {
      const auto data = load_dataset(sweep_data.records, sweep_data.manifest);
      sweep_config.methods.clear();
      for (const auto& m : sweep_methods) sweep_config.methods.push_back(skg::parse_partition_method(m));
      sweep_config.cutoff_year = sweep_cutoff;
      const auto params = sweep_flags.get();
      sweep_config.aggregator = params.aggregator;
      sweep_config.scope = params.scope;
      sweep_config.min_weight = params.min_weight;
      sweep_config.metrics = sweep_metrics.get();
      if (!sweep_cutoff) graph_of(data);  // surface record conflicts as ingest failures
      const auto result = pipeline([&] { return skg::run_sweep(data.records, data.manifest, sweep_config); });
      pipeline([&] {
        skg::write_sweep(result, sweep_out);
        return 0;
      });
      return 0;
    }
  } catch (const Failure& f) {
    std::cerr << "skg: " << f.message << '\n';
    return f.code;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "skg: " << e.what() << '\n';
    return kPipelineFailure;
  }
  return 0;
}
