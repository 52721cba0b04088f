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

// Homophily-based pattern generation: every unobserved pair inside a
// community becomes a predicted co-author relation weighted by the
// community's aggregated relatedness.

#pragma once

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "skg/error.hpp"
#include "skg/graph.hpp"
#include "skg/partition.hpp"
#include "skg/relatedness.hpp"
#include "skg/text.hpp"

namespace skg {

enum class Aggregator { Average, Minimum, Product };

inline Aggregator parse_aggregator(std::string_view text) {
  if (text == "avg" || text == "average") return Aggregator::Average;
  if (text == "min" || text == "minimum") return Aggregator::Minimum;
  if (text == "product") return Aggregator::Product;
  throw Error(Errc::InvalidParameter, "unknown aggregator '" + std::string(text) + "'");
}

/// Aggregate of a multiset of scores in [0,1]; 0 for the empty multiset.
inline double aggregate(Aggregator f, const std::vector<double>& scores) {
  if (scores.empty()) return 0.0;
  switch (f) {
    case Aggregator::Average:
      return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    case Aggregator::Minimum:
      return *std::min_element(scores.begin(), scores.end());
    case Aggregator::Product:
      return std::accumulate(scores.begin(), scores.end(), 1.0, std::multiplies<>());
  }
  return 0.0;
}

/// Which scores feed the weight of a predicted pair.
enum class WeightScope {
  Community,  // every scored pair inside the community (pair-independent)
  PairLocal,  // scored pairs inside the community touching either endpoint
};

/// Scores of SC pairs with both endpoints in the community, in canonical
/// pair order.
inline std::vector<double> community_scores(const Community& c, const RelatednessSet& sc) {
  std::vector<double> out;
  for (const auto& [pair, s] : sc.scores()) {
    if (c.members.count(pair.first) && c.members.count(pair.second)) out.push_back(s);
  }
  return out;
}

/// Weight of connectivity shared by all pairs of a community.
inline double connectivity_weight(const Community& c, const RelatednessSet& sc, Aggregator f) {
  return aggregate(f, community_scores(c, sc));
}

/// Pair-local weight: aggregate over in-community scores incident to a or b.
inline double connectivity_weight(const Community& c, const RelatednessSet& sc, Aggregator f,
                                  const EntityId& a, const EntityId& b) {
  std::vector<double> scores;
  for (const auto& [pair, s] : sc.scores()) {
    if (!c.members.count(pair.first) || !c.members.count(pair.second)) continue;
    if (pair.first == a || pair.first == b || pair.second == a || pair.second == b) scores.push_back(s);
  }
  return aggregate(f, scores);
}

struct PredictedRelation {
  EntityId left;
  EntityId right;
  double weight = 0;
  int community_id = 0;

  friend bool operator==(const PredictedRelation&, const PredictedRelation&) = default;
};

/// Sorted by descending weight, ties by (left, right).
struct PredictedNetwork {
  std::vector<PredictedRelation> relations;

  bool empty() const noexcept { return relations.empty(); }
  std::size_t size() const noexcept { return relations.size(); }
};

struct PatternParams {
  Aggregator aggregator = Aggregator::Average;
  double min_weight = 0.0;
  WeightScope scope = WeightScope::Community;
};

inline PredictedNetwork generate_patterns(const Partition& partition, const RelatednessSet& sc,
                                          const CoAuthorNetwork& observed, const PatternParams& params = {}) {
  for (const auto& id : partition.universe()) {
    if (!observed.researchers.count(id)) {
      throw Error(Errc::UniverseMismatch, id.str() + " is not a researcher of the observed network");
    }
  }
  PredictedNetwork net;
  for (const auto& c : partition.communities()) {
    if (c.members.size() < 2) continue;
    const double shared = connectivity_weight(c, sc, params.aggregator);
    for (auto i = c.members.begin(); i != c.members.end(); ++i) {
      for (auto j = std::next(i); j != c.members.end(); ++j) {
        if (observed.contains(*i, *j)) continue;
        const double w = params.scope == WeightScope::Community
                             ? shared
                             : connectivity_weight(c, sc, params.aggregator, *i, *j);
        if (w < params.min_weight) continue;
        net.relations.push_back({*i, *j, w, c.id});
      }
    }
  }
  std::sort(net.relations.begin(), net.relations.end(), [](const auto& a, const auto& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::tie(a.left, a.right) < std::tie(b.left, b.right);
  });
  return net;
}

/// Lines `left<TAB>right<TAB>weight<TAB>community_id`.
inline void write_predictions(const PredictedNetwork& net, std::ostream& out) {
  for (const auto& r : net.relations) {
    out << r.left.str() << '\t' << r.right.str() << '\t' << format_double(r.weight) << '\t' << r.community_id
        << '\n';
  }
}

inline PredictedNetwork read_predictions(std::istream& in) {
  PredictedNetwork net;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto f = split_tabs(view);
    if (f.size() != 4) {
      throw Error(Errc::InvalidParameter,
                  "prediction line " + std::to_string(line_no) + ": expected 4 tab-separated fields");
    }
    net.relations.push_back({EntityId(std::string(f[0])), EntityId(std::string(f[1])), parse_double(f[2]),
                             static_cast<int>(parse_integer(f[3]))});
  }
  return net;
}

}  // namespace skg
