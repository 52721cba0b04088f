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

// Partition quality on a weighted similarity graph. All measures are
// oriented so that higher is better and lie in [0, 1].

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "skg/error.hpp"
#include "skg/partition.hpp"
#include "skg/relatedness.hpp"
#include "skg/text.hpp"

namespace skg {

enum class ConductanceAggregate { Mean, Max };

struct MetricOptions {
  ConductanceAggregate conductance = ConductanceAggregate::Mean;
  // A pair counts as a relationship for performance iff its score exceeds
  // this value (score > 0 by default). With `inclusive`, score >= value.
  double relationship_threshold = 0.0;
  bool inclusive_threshold = false;
};

struct PartitionQualityReport {
  std::string method;
  int percentile = 0;
  double inv_conductance = 0;
  double coverage = 0;
  double scaled_modularity = 0;
  double performance = 0;
  double inv_norm_total_cut = 0;
};

namespace detail {

/// Shared precomputation: per-community volume and intra weight.
struct CommunityTotals {
  SimilarityGraph graph;
  std::vector<int> labels;
  std::vector<double> volume;  // sum of member degrees
  std::vector<double> inside;  // sum of intra-community pair weights (each pair once)
  double intra = 0;
  double inter = 0;

  CommunityTotals(const RelatednessSet& sc, const Partition& p)
      : graph(SimilarityGraph::build(sc, check(sc, p))), labels(labels_for(graph, p)) {
    volume.assign(p.size(), 0.0);
    inside.assign(p.size(), 0.0);
    for (std::uint32_t v = 0; v < graph.size(); ++v) {
      volume[labels[v]] += graph.degree[v];
      for (const auto& [u, w] : graph.adj[v]) {
        if (u <= v) continue;
        if (labels[u] == labels[v]) {
          inside[labels[v]] += w;
          intra += w;
        } else {
          inter += w;
        }
      }
    }
  }

  static const IdSet& check(const RelatednessSet& sc, const Partition& p) {
    if (p.size() == 0 || p.universe().empty()) throw Error(Errc::EmptyPartition, "partition is empty");
    for (const auto& id : sc.universe()) {
      if (!p.universe().count(id)) throw Error(Errc::UniverseMismatch, id.str() + " not covered by partition");
    }
    return p.universe();
  }

  double total() const { return intra + inter; }
};

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

inline double inv_conductance(const CommunityTotals& t, ConductanceAggregate agg) {
  double sum = 0;
  double worst = 0;
  std::size_t eligible = 0;
  for (std::size_t c = 0; c < t.volume.size(); ++c) {
    const double vol = t.volume[c];
    // The complement is summed rather than subtracted so that an empty
    // complement is detected exactly.
    double rest = 0;
    for (std::size_t o = 0; o < t.volume.size(); ++o) {
      if (o != c) rest += t.volume[o];
    }
    if (!(vol > 0.0 && rest > 0.0)) continue;
    const double cut = std::max(0.0, vol - 2.0 * t.inside[c]);
    const double phi = cut / std::min(vol, rest);
    sum += phi;
    worst = std::max(worst, phi);
    ++eligible;
  }
  if (eligible == 0) return 1.0;
  const double conductance = agg == ConductanceAggregate::Mean ? sum / static_cast<double>(eligible) : worst;
  return clamp01(1.0 - conductance);
}

inline double coverage(const CommunityTotals& t) {
  const double total = t.total();
  return total == 0.0 ? 1.0 : t.intra / total;
}

inline double inv_norm_total_cut(const CommunityTotals& t) {
  const double total = t.total();
  return total == 0.0 ? 1.0 : 1.0 - t.inter / total;
}

inline double raw_modularity(const CommunityTotals& t) {
  const double two_m = 2.0 * t.total();
  if (two_m == 0.0) return 0.0;
  double q = 0;
  for (std::size_t c = 0; c < t.volume.size(); ++c) {
    const double share = t.volume[c] / two_m;
    q += 2.0 * t.inside[c] / two_m - share * share;
  }
  return q;
}

inline double performance(const CommunityTotals& t, const MetricOptions& opt) {
  const std::size_t n = t.graph.size();
  if (n < 2) return 1.0;
  auto related = [&](double w) {
    return opt.inclusive_threshold ? w >= opt.relationship_threshold : w > opt.relationship_threshold;
  };
  // Inter pairs without a relationship = all inter pairs - related inter pairs.
  std::vector<std::size_t> sizes(t.volume.size(), 0);
  for (int l : t.labels) ++sizes[l];
  const double all_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  double same_pairs = 0;
  for (auto s : sizes) same_pairs += static_cast<double>(s) * static_cast<double>(s - 1) / 2.0;
  double intra_related = 0;
  double inter_related = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const auto& [u, w] : t.graph.adj[v]) {
      if (u <= v || !related(w)) continue;
      (t.labels[u] == t.labels[v] ? intra_related : inter_related) += 1.0;
    }
  }
  // A threshold below zero also marks absent pairs (score 0) as related.
  if (related(0.0)) {
    double stored_intra = 0;
    double stored_inter = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
      for (const auto& [u, w] : t.graph.adj[v]) {
        if (u > v) (t.labels[u] == t.labels[v] ? stored_intra : stored_inter) += 1.0;
      }
    }
    intra_related += same_pairs - stored_intra;
    inter_related += (all_pairs - same_pairs) - stored_inter;
  }
  const double inter_unrelated = (all_pairs - same_pairs) - inter_related;
  return clamp01((intra_related + inter_unrelated) / all_pairs);
}

}  // namespace detail

/// 1 - mean (or max) conductance over communities S with 0 < vol(S) < vol(V).
inline double conductance(const RelatednessSet& sc, const Partition& p,
                          ConductanceAggregate agg = ConductanceAggregate::Mean) {
  return detail::inv_conductance(detail::CommunityTotals(sc, p), agg);
}

inline double coverage(const RelatednessSet& sc, const Partition& p) {
  return detail::coverage(detail::CommunityTotals(sc, p));
}

/// Weighted Newman modularity Q, without rescaling.
inline double modularity_q(const RelatednessSet& sc, const Partition& p) {
  return detail::raw_modularity(detail::CommunityTotals(sc, p));
}

/// (Q + 0.5) / 1.5, mapping [-0.5, 1] onto [0, 1].
inline double modularity(const RelatednessSet& sc, const Partition& p) {
  return detail::clamp01((modularity_q(sc, p) + 0.5) / 1.5);
}

inline double performance(const RelatednessSet& sc, const Partition& p, const MetricOptions& opt = {}) {
  return detail::performance(detail::CommunityTotals(sc, p), opt);
}

/// 1 - (inter-community weight / total weight).
inline double total_cut(const RelatednessSet& sc, const Partition& p) {
  return detail::inv_norm_total_cut(detail::CommunityTotals(sc, p));
}

inline PartitionQualityReport evaluate(const RelatednessSet& sc, const Partition& p, std::string method,
                                       int percentile, const MetricOptions& opt = {}) {
  const detail::CommunityTotals t(sc, p);
  PartitionQualityReport r;
  r.method = std::move(method);
  r.percentile = percentile;
  r.inv_conductance = detail::inv_conductance(t, opt.conductance);
  r.coverage = detail::coverage(t);
  r.scaled_modularity = detail::clamp01((detail::raw_modularity(t) + 0.5) / 1.5);
  r.performance = detail::performance(t, opt);
  r.inv_norm_total_cut = detail::inv_norm_total_cut(t);
  return r;
}

inline constexpr std::string_view kReportHeader =
    "method,percentile,inv_conductance,coverage,scaled_modularity,performance,inv_norm_total_cut";

inline void write_report_row(const PartitionQualityReport& r, std::ostream& out) {
  out << r.method << ',' << r.percentile << ',' << format_double(r.inv_conductance) << ','
      << format_double(r.coverage) << ',' << format_double(r.scaled_modularity) << ','
      << format_double(r.performance) << ',' << format_double(r.inv_norm_total_cut) << '\n';
}

}  // namespace skg
