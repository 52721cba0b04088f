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

// Community solvers over a relatedness set: a threshold-driven greedy
// agglomeration ("semantic") and a balanced k-way min-cut ("kway").

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "skg/error.hpp"
#include "skg/graph.hpp"
#include "skg/relatedness.hpp"
#include "skg/text.hpp"

namespace skg {

struct Community {
  int id = 0;
  IdSet members;

  friend bool operator==(const Community&, const Community&) = default;
};

/// Disjoint cover of a universe. Community ids are canonical: communities are
/// numbered 0.. in order of their smallest member.
class Partition {
 public:
  Partition() = default;

  static Partition from_groups(std::vector<IdSet> groups, IdSet universe) {
    std::erase_if(groups, [](const IdSet& g) { return g.empty(); });
    std::sort(groups.begin(), groups.end(),
              [](const IdSet& a, const IdSet& b) { return *a.begin() < *b.begin(); });
    Partition p;
    std::size_t covered = 0;
    IdSet seen;
    for (auto& g : groups) {
      for (const auto& id : g) {
        if (!universe.count(id)) throw Error(Errc::UniverseMismatch, id.str() + " is outside the universe");
        if (!seen.insert(id).second) {
          throw Error(Errc::InvalidParameter, id.str() + " appears in two communities");
        }
      }
      covered += g.size();
      p.communities_.push_back(Community{static_cast<int>(p.communities_.size()), std::move(g)});
    }
    if (covered != universe.size()) {
      throw Error(Errc::InvalidParameter, "communities do not cover the universe");
    }
    p.universe_ = std::move(universe);
    return p;
  }

  /// Builds a partition from a label per entity. Labels only group; the
  /// resulting ids are canonical.
  template <class Label>
  static Partition from_labels(const std::map<EntityId, Label>& labels) {
    std::map<Label, IdSet> groups;
    IdSet universe;
    for (const auto& [id, label] : labels) {
      groups[label].insert(id);
      universe.insert(id);
    }
    std::vector<IdSet> out;
    out.reserve(groups.size());
    for (auto& [label, g] : groups) out.push_back(std::move(g));
    return from_groups(std::move(out), std::move(universe));
  }

  const std::vector<Community>& communities() const noexcept { return communities_; }
  const IdSet& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return communities_.size(); }

  std::map<EntityId, int> assignment() const {
    std::map<EntityId, int> out;
    for (const auto& c : communities_) {
      for (const auto& id : c.members) out.emplace(id, c.id);
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<Community> communities_;
  IdSet universe_;
};

/// Lines `community_id<TAB>entity_id`, sorted by community then entity.
inline void write_partition(const Partition& p, std::ostream& out) {
  for (const auto& c : p.communities()) {
    for (const auto& id : c.members) out << c.id << '\t' << id.str() << '\n';
  }
}

inline Partition read_partition(std::istream& in) {
  std::map<EntityId, long long> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() != 2) {
      throw Error(Errc::InvalidParameter,
                  "partition line " + std::to_string(line_no) + ": expected 2 tab-separated fields");
    }
    EntityId id{std::string(fields[1])};
    if (!labels.emplace(id, parse_integer(fields[0])).second) {
      throw Error(Errc::InvalidParameter, id.str() + " listed twice in partition");
    }
  }
  return Partition::from_labels(labels);
}

// ---------------------------------------------------------------------------
// Indexed view of a relatedness set

/// Dense-index adjacency over a universe; node i is the i-th id in order.
struct SimilarityGraph {
  std::vector<EntityId> nodes;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> degree;

  static SimilarityGraph build(const RelatednessSet& sc, const IdSet& universe) {
    SimilarityGraph g;
    g.nodes.assign(universe.begin(), universe.end());
    g.adj.resize(g.nodes.size());
    g.degree.assign(g.nodes.size(), 0.0);
    for (const auto& [pair, s] : sc.scores()) {
      const auto a = g.index_of(pair.first);
      const auto b = g.index_of(pair.second);
      g.adj[a].push_back({b, s});
      g.adj[b].push_back({a, s});
      g.degree[a] += s;
      g.degree[b] += s;
    }
    return g;
  }

  std::size_t size() const noexcept { return nodes.size(); }

  std::uint32_t index_of(const EntityId& id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    if (it == nodes.end() || *it != id) throw Error(Errc::UniverseMismatch, id.str() + " not in universe");
    return static_cast<std::uint32_t>(it - nodes.begin());
  }
};

/// Dense community label per node of `g`.
inline std::vector<int> labels_for(const SimilarityGraph& g, const Partition& p) {
  std::vector<int> labels(g.size(), -1);
  for (const auto& c : p.communities()) {
    for (const auto& id : c.members) labels[g.index_of(id)] = c.id;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw Error(Errc::UniverseMismatch, g.nodes[i].str() + " not covered by partition");
  }
  return labels;
}

/// Total weight of edges whose endpoints carry different labels.
inline double total_cut_weight(const SimilarityGraph& g, const std::vector<int>& labels) {
  double cut = 0;
  for (std::uint32_t v = 0; v < g.size(); ++v) {
    for (const auto& [u, w] : g.adj[v]) {
      if (u > v && labels[u] != labels[v]) cut += w;
    }
  }
  return cut;
}

inline Partition partition_from_dense(const SimilarityGraph& g, const std::vector<int>& labels) {
  std::map<EntityId, int> by_id;
  for (std::size_t i = 0; i < g.size(); ++i) by_id.emplace(g.nodes[i], labels[i]);
  return Partition::from_labels(by_id);
}

// ---------------------------------------------------------------------------
// Partitioners

enum class PartitionMethod { Semantic, Kway };

inline PartitionMethod parse_partition_method(std::string_view text) {
  if (text == "semantic") return PartitionMethod::Semantic;
  if (text == "kway") return PartitionMethod::Kway;
  throw Error(Errc::InvalidParameter, "unknown partition method '" + std::string(text) + "'");
}

constexpr std::string_view to_string(PartitionMethod m) {
  return m == PartitionMethod::Semantic ? "semantic" : "kway";
}

struct PartitionerParams {
  PartitionMethod method = PartitionMethod::Semantic;
  std::optional<int> k;                  // kway
  std::optional<double> merge_floor;     // semantic; defaults to the smallest score in sc
  std::uint64_t seed = 0;                // reserved; does not affect output
  double balance_tolerance = 0.1;        // kway
  int max_refine_iters = 20;             // kway
};

/// Greedy agglomeration. Triples are visited by descending score (ties in
/// canonical pair order) and the endpoint communities merge when the merged
/// community's mean pairwise score, absent pairs counting 0, reaches the
/// floor.
inline Partition partition_semantic(const RelatednessSet& sc, const PartitionerParams& params = {}) {
  if (sc.empty()) throw Error(Errc::EmptyRelatednessSet, "semantic partitioning needs scored pairs");
  double floor = 0;
  if (params.merge_floor) {
    floor = *params.merge_floor;
  } else {
    floor = 1.0;
    for (const auto& [pair, s] : sc.scores()) floor = std::min(floor, s);
  }
  if (!(floor >= 0.0 && floor <= 1.0)) throw Error(Errc::InvalidParameter, "merge floor must lie in [0,1]");

  const auto g = SimilarityGraph::build(sc, sc.universe());
  const std::size_t n = g.size();
  std::vector<std::uint32_t> comm(n);
  std::vector<std::vector<std::uint32_t>> members(n);
  std::vector<double> intra(n, 0.0);
  for (std::uint32_t v = 0; v < n; ++v) {
    comm[v] = v;
    members[v] = {v};
  }

  struct Scored {
    std::uint32_t a, b;
    double s;
  };
  std::vector<Scored> order;
  order.reserve(sc.size());
  for (const auto& [pair, s] : sc.scores()) order.push_back({g.index_of(pair.first), g.index_of(pair.second), s});
  // Indices follow id order, so (a, b) order is the canonical pair order.
  std::stable_sort(order.begin(), order.end(), [](const Scored& x, const Scored& y) {
    if (x.s != y.s) return x.s > y.s;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  for (const auto& t : order) {
    std::uint32_t ca = comm[t.a];
    std::uint32_t cb = comm[t.b];
    if (ca == cb) continue;
    if (members[ca].size() < members[cb].size()) std::swap(ca, cb);
    double cross = 0;
    for (auto v : members[cb]) {
      for (const auto& [u, w] : g.adj[v]) {
        if (comm[u] == ca) cross += w;
      }
    }
    const double size = static_cast<double>(members[ca].size() + members[cb].size());
    const double merged = intra[ca] + intra[cb] + cross;
    const double mean = merged / (size * (size - 1) / 2);
    if (mean < floor) continue;
    for (auto v : members[cb]) comm[v] = ca;
    members[ca].insert(members[ca].end(), members[cb].begin(), members[cb].end());
    members[cb].clear();
    intra[ca] = merged;
    intra[cb] = 0;
  }

  std::vector<int> labels(comm.begin(), comm.end());
  return partition_from_dense(g, labels);
}

/// Diagnostics of one k-way run.
struct KwayTrace {
  double cut_after_seeding = 0;
  double final_cut = 0;
  int refine_passes = 0;
  int moves = 0;
};

/// Balanced k-way partitioning in two phases.
///
/// Seeding picks the entity of largest weighted degree, then repeatedly the
/// entity least similar to all chosen seeds (farthest-first; ties by larger
/// degree, then id). Regions grow round-robin: the smallest region (lowest
/// index on ties) attaches the unassigned entity with the largest total
/// similarity to it (ties by id).
///
/// Refinement makes up to max_refine_iters passes over entities in id order,
/// moving an entity to the neighbouring community with the largest positive
/// cut reduction as long as both sizes stay within
/// [floor((1-tol)n/k), ceil((1+tol)n/k)] and no community becomes empty. It
/// stops after a pass without moves.
inline Partition partition_kway(const RelatednessSet& sc, const PartitionerParams& params,
                                KwayTrace* trace = nullptr) {
  const auto g = SimilarityGraph::build(sc, sc.universe());
  const std::size_t n = g.size();
  if (!params.k) throw Error(Errc::InvalidParameter, "kway requires k");
  if (*params.k < 1) throw Error(Errc::InvalidParameter, "k must be at least 1");
  const auto k = static_cast<std::size_t>(*params.k);
  if (k > n) {
    throw Error(Errc::KTooLarge, "k=" + std::to_string(k) + " exceeds universe size " + std::to_string(n));
  }
  if (params.balance_tolerance < 0) throw Error(Errc::InvalidParameter, "balance tolerance must be >= 0");

  constexpr int kUnassigned = -1;
  std::vector<int> label(n, kUnassigned);
  std::vector<std::size_t> size(k, 0);

  // Seeds.
  std::vector<double> closeness(n, 0.0);
  std::vector<std::uint32_t> seeds;
  auto assign_seed = [&](std::uint32_t s) {
    label[s] = static_cast<int>(seeds.size());
    ++size[seeds.size()];
    seeds.push_back(s);
    for (const auto& [u, w] : g.adj[s]) closeness[u] = std::max(closeness[u], w);
  };
  {
    std::uint32_t first = 0;
    for (std::uint32_t v = 1; v < n; ++v) {
      if (g.degree[v] > g.degree[first]) first = v;
    }
    assign_seed(first);
  }
  while (seeds.size() < k) {
    std::optional<std::uint32_t> best;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (label[v] != kUnassigned) continue;
      if (!best || closeness[v] < closeness[*best] ||
          (closeness[v] == closeness[*best] && g.degree[v] > g.degree[*best])) {
        best = v;
      }
    }
    assign_seed(*best);
  }

  // Round-robin growth.
  std::vector<std::map<std::uint32_t, double>> frontier(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (const auto& [u, w] : g.adj[seeds[r]]) {
      if (label[u] == kUnassigned) frontier[r][u] += w;
    }
  }
  std::size_t assigned = k;
  while (assigned < n) {
    std::size_t region = 0;
    for (std::size_t r = 1; r < k; ++r) {
      if (size[r] < size[region]) region = r;
    }
    std::optional<std::uint32_t> pick;
    double pick_weight = 0;
    for (auto it = frontier[region].begin(); it != frontier[region].end();) {
      if (label[it->first] != kUnassigned) {
        it = frontier[region].erase(it);
        continue;
      }
      if (!pick || it->second > pick_weight) {
        pick = it->first;
        pick_weight = it->second;
      }
      ++it;
    }
    if (!pick) {
      for (std::uint32_t v = 0; v < n; ++v) {
        if (label[v] == kUnassigned) {
          pick = v;
          break;
        }
      }
    }
    label[*pick] = static_cast<int>(region);
    ++size[region];
    ++assigned;
    frontier[region].erase(*pick);
    for (const auto& [u, w] : g.adj[*pick]) {
      if (label[u] == kUnassigned) frontier[region][u] += w;
    }
  }

  KwayTrace local;
  local.cut_after_seeding = total_cut_weight(g, label);

  // Refinement.
  const double target = static_cast<double>(n) / static_cast<double>(k);
  const auto lo = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor((1.0 - params.balance_tolerance) * target + 1e-9)));
  const auto hi = static_cast<std::size_t>(std::ceil((1.0 + params.balance_tolerance) * target - 1e-9));
  constexpr double kMinGain = 1e-12;
  std::map<int, double> conn;
  for (int pass = 0; pass < params.max_refine_iters; ++pass) {
    int moves = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      const int own = label[v];
      if (size[own] <= lo) continue;
      conn.clear();
      for (const auto& [u, w] : g.adj[v]) conn[label[u]] += w;
      const double stay = conn.count(own) ? conn[own] : 0.0;
      int best = own;
      double best_gain = kMinGain;
      for (const auto& [c, w] : conn) {
        if (c == own || size[c] + 1 > hi) continue;
        if (w - stay > best_gain) {
          best = c;
          best_gain = w - stay;
        }
      }
      if (best != own) {
        label[v] = best;
        --size[own];
        ++size[best];
        ++moves;
      }
    }
    ++local.refine_passes;
    local.moves += moves;
    if (moves == 0) break;
  }
  local.final_cut = total_cut_weight(g, label);
  if (trace) *trace = local;
  return partition_from_dense(g, label);
}

inline Partition run_partitioner(const RelatednessSet& sc, const PartitionerParams& params) {
  return params.method == PartitionMethod::Semantic ? partition_semantic(sc, params)
                                                    : partition_kway(sc, params);
}

}  // namespace skg
