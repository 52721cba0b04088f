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

// Intra-type relatedness: scored pairs of same-kind entities and percentile
// thresholding over them.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "skg/error.hpp"
#include "skg/graph.hpp"
#include "skg/text.hpp"

namespace skg {

struct RelatednessTriple {
  EntityId left;
  EntityId right;
  double score = 0;

  friend bool operator==(const RelatednessTriple&, const RelatednessTriple&) = default;
};

/// Sparse symmetric score table over entities of one kind. Absent pairs score
/// 0 and zero scores are never stored. The universe lists every entity the
/// set speaks about, including those without any positive score.
class RelatednessSet {
 public:
  explicit RelatednessSet(EntityKind kind = EntityKind::Researcher) : kind_(kind) {}

  EntityKind kind() const noexcept { return kind_; }

  /// Inserts a scored pair. Scores must lie in [0, 1]; zero scores only extend
  /// the universe. Re-inserting a pair with a different score is an error.
  void insert(const EntityId& a, const EntityId& b, double score) {
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
      throw Error(Errc::InvalidParameter, "score for (" + a.str() + ", " + b.str() +
                                              ") outside [0,1]: " + format_double(score));
    }
    auto pair = IdPair::of(a, b);
    universe_.insert(a);
    universe_.insert(b);
    if (score == 0.0) return;
    auto [it, inserted] = scores_.emplace(std::move(pair), score);
    if (!inserted && it->second != score) {
      throw Error(Errc::InvalidParameter,
                  "conflicting scores for (" + it->first.first.str() + ", " + it->first.second.str() + ")");
    }
  }

  void add_to_universe(const EntityId& id) { universe_.insert(id); }

  double score(const EntityId& a, const EntityId& b) const {
    if (a == b) return 0.0;
    auto it = scores_.find(IdPair::of(a, b));
    return it == scores_.end() ? 0.0 : it->second;
  }

  bool empty() const noexcept { return scores_.empty(); }
  std::size_t size() const noexcept { return scores_.size(); }
  const std::map<IdPair, double>& scores() const noexcept { return scores_; }
  const IdSet& universe() const noexcept { return universe_; }

  /// Triples in canonical pair order.
  std::vector<RelatednessTriple> triples() const {
    std::vector<RelatednessTriple> out;
    out.reserve(scores_.size());
    for (const auto& [pair, s] : scores_) out.push_back({pair.first, pair.second, s});
    return out;
  }

 private:
  EntityKind kind_;
  std::map<IdPair, double> scores_;
  IdSet universe_;
};

// ---------------------------------------------------------------------------
// Pairwise measures

namespace detail {

template <class Set>
std::size_t intersection_size(const Set& a, const Set& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

inline void require_kind(const ScholarlyKnowledgeGraph& g, const EntityId& id, EntityKind kind) {
  if (g.kind_of(id) != kind) {
    throw Error(Errc::WrongKind, id.str() + " is not a " + std::string(to_string(kind)));
  }
}

inline IdSet researchers_at(const ScholarlyKnowledgeGraph& g, const EntityId& venue) {
  IdSet out;
  for (const auto& p : g.papers_at(venue)) {
    const auto& authors = g.authors_of(p);
    out.insert(authors.begin(), authors.end());
  }
  return out;
}

}  // namespace detail

/// Researcher similarity: papers both authored inside the focus venues,
/// relative to the union of everything either of them published.
inline double sim_r(const ScholarlyKnowledgeGraph& g, const EntityId& ri, const EntityId& rj,
                    const IdSet& focus_series) {
  const IdSet focus_i = papers_of(g, ri, &focus_series);
  const IdSet focus_j = papers_of(g, rj, &focus_series);
  const IdSet& total_i = g.papers_by_author(ri);
  const IdSet& total_j = g.papers_by_author(rj);
  const std::size_t shared_total = detail::intersection_size(total_i, total_j);
  const std::size_t union_size = total_i.size() + total_j.size() - shared_total;
  if (union_size == 0) return 0.0;
  return static_cast<double>(detail::intersection_size(focus_i, focus_j)) /
         static_cast<double>(union_size);
}

/// Venue similarity: Jaccard index of the two author sets.
inline double sim_c(const ScholarlyKnowledgeGraph& g, const EntityId& ci, const EntityId& cj) {
  detail::require_kind(g, ci, EntityKind::Venue);
  detail::require_kind(g, cj, EntityKind::Venue);
  const IdSet a = detail::researchers_at(g, ci);
  const IdSet b = detail::researchers_at(g, cj);
  const std::size_t inter = detail::intersection_size(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

inline constexpr int kMaxPathLength = 4;

/// Counts simple paths of length <= max_len over author and published-in
/// edges (either direction) between every pair of `kind` entities, then
/// divides by the largest count.
inline RelatednessSet path_relatedness(const ScholarlyKnowledgeGraph& g, EntityKind kind, int max_len) {
  if (max_len != 2 && max_len != kMaxPathLength) {
    throw Error(Errc::InvalidParameter,
                "path length must be 2 or 4, got " + std::to_string(max_len));
  }
  // Dense indices in id order.
  std::vector<EntityId> ids;
  std::map<EntityId, std::uint32_t> index;
  for (const auto& [id, k] : g.entities()) {
    index.emplace(id, static_cast<std::uint32_t>(ids.size()));
    ids.push_back(id);
  }
  std::vector<std::vector<std::uint32_t>> adj(ids.size());
  for (const auto& e : g.edges()) {
    if (e.property != Property::Author && e.property != Property::PublishedIn) continue;
    const auto s = index.at(e.subject);
    const auto o = index.at(std::get<EntityId>(e.object));
    adj[s].push_back(o);
    adj[o].push_back(s);
  }
  std::vector<bool> is_target(ids.size());
  for (std::uint32_t v = 0; v < ids.size(); ++v) is_target[v] = g.kind_of(ids[v]) == kind;

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> raw;
  std::vector<bool> on_path(ids.size(), false);

  // Explicit-stack DFS; each path is counted from its smaller endpoint only.
  struct Frame {
    std::uint32_t vertex;
    std::size_t next;
  };
  for (std::uint32_t src = 0; src < ids.size(); ++src) {
    if (!is_target[src]) continue;
    std::vector<Frame> stack{{src, 0}};
    on_path[src] = true;
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == adj[top.vertex].size() || static_cast<int>(stack.size()) > max_len) {
        on_path[top.vertex] = false;
        stack.pop_back();
        continue;
      }
      const std::uint32_t nxt = adj[top.vertex][top.next++];
      if (on_path[nxt]) continue;
      if (is_target[nxt] && nxt > src) ++raw[{src, nxt}];
      on_path[nxt] = true;
      stack.push_back({nxt, 0});
    }
  }

  RelatednessSet out(kind);
  for (std::uint32_t v = 0; v < ids.size(); ++v) {
    if (is_target[v]) out.add_to_universe(ids[v]);
  }
  std::uint64_t max_count = 0;
  for (const auto& [pair, c] : raw) max_count = std::max(max_count, c);
  for (const auto& [pair, c] : raw) {
    out.insert(ids[pair.first], ids[pair.second],
               static_cast<double>(c) / static_cast<double>(max_count));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SC construction

enum class SimilarityMethod { SimR, SimC, Path, External };

inline SimilarityMethod parse_similarity_method(std::string_view text) {
  if (text == "simr") return SimilarityMethod::SimR;
  if (text == "simc") return SimilarityMethod::SimC;
  if (text == "path") return SimilarityMethod::Path;
  if (text == "external") return SimilarityMethod::External;
  throw Error(Errc::InvalidParameter, "unknown similarity method '" + std::string(text) + "'");
}

struct SimilarityParams {
  IdSet focus_series;                      // simR
  int max_len = 2;                         // path
  std::vector<RelatednessTriple> external; // external
};

/// Builds SC for all entities of `kind`: every unordered pair with a positive
/// score, with the universe set to all entities of that kind.
inline RelatednessSet compute_sc(const ScholarlyKnowledgeGraph& g, EntityKind kind,
                                 SimilarityMethod method, const SimilarityParams& params = {}) {
  if ((method == SimilarityMethod::SimR && kind != EntityKind::Researcher) ||
      (method == SimilarityMethod::SimC && kind != EntityKind::Venue)) {
    throw Error(Errc::MethodKindMismatch, "method incompatible with kind " + std::string(to_string(kind)));
  }
  if (method == SimilarityMethod::Path) return path_relatedness(g, kind, params.max_len);

  RelatednessSet out(kind);
  for (const auto& id : g.entities_of(kind)) out.add_to_universe(id);

  switch (method) {
    case SimilarityMethod::SimR: {
      if (params.focus_series.empty()) {
        throw Error(Errc::InvalidParameter, "simR requires a non-empty focus venue series");
      }
      // Only pairs sharing a focus paper have a non-zero numerator.
      std::set<IdPair> candidates;
      for (const auto& v : params.focus_series) {
        if (!g.contains(v) || g.kind_of(v) != EntityKind::Venue) continue;
        for (const auto& p : g.papers_at(v)) {
          const auto& authors = g.authors_of(p);
          for (auto i = authors.begin(); i != authors.end(); ++i) {
            for (auto j = std::next(i); j != authors.end(); ++j) candidates.insert(IdPair{*i, *j});
          }
        }
      }
      for (const auto& pair : candidates) {
        out.insert(pair.first, pair.second, sim_r(g, pair.first, pair.second, params.focus_series));
      }
      break;
    }
    case SimilarityMethod::SimC: {
      std::set<IdPair> candidates;
      for (const auto& r : g.entities_of(EntityKind::Researcher)) {
        IdSet venues;
        for (const auto& p : g.papers_by_author(r)) {
          const auto& vs = g.venues_of(p);
          venues.insert(vs.begin(), vs.end());
        }
        for (auto i = venues.begin(); i != venues.end(); ++i) {
          for (auto j = std::next(i); j != venues.end(); ++j) candidates.insert(IdPair{*i, *j});
        }
      }
      for (const auto& pair : candidates) {
        out.insert(pair.first, pair.second, sim_c(g, pair.first, pair.second));
      }
      break;
    }
    case SimilarityMethod::External:
      for (const auto& t : params.external) {
        detail::require_kind(g, t.left, kind);
        detail::require_kind(g, t.right, kind);
        out.insert(t.left, t.right, t.score);
      }
      break;
    case SimilarityMethod::Path:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Score files: `left<TAB>right<TAB>score`

inline std::vector<RelatednessTriple> read_score_triples(std::istream& in) {
  std::vector<RelatednessTriple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() != 3) {
      throw Error(Errc::InvalidParameter,
                  "score file line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
    }
    out.push_back({EntityId(std::string(fields[0])), EntityId(std::string(fields[1])),
                   parse_double(fields[2])});
  }
  return out;
}

inline RelatednessSet read_scores(std::istream& in, EntityKind kind = EntityKind::Researcher) {
  RelatednessSet out(kind);
  for (const auto& t : read_score_triples(in)) out.insert(t.left, t.right, t.score);
  return out;
}

inline void write_scores(const RelatednessSet& sc, std::ostream& out) {
  for (const auto& [pair, s] : sc.scores()) {
    out << pair.first.str() << '\t' << pair.second.str() << '\t' << format_double(s) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Percentiles

/// Nearest-rank percentile of the stored (positive) scores: the value at rank
/// ceil(p/100 * n) of the ascending order.
inline double percentile_cutoff(const RelatednessSet& sc, int p) {
  if (p < 1 || p > 99) throw Error(Errc::InvalidParameter, "percentile must be in [1, 99]");
  if (sc.empty()) throw Error(Errc::EmptyRelatednessSet, "cannot threshold an empty set");
  std::vector<double> values;
  values.reserve(sc.size());
  for (const auto& [pair, s] : sc.scores()) values.push_back(s);
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const std::size_t rank = (static_cast<std::size_t>(p) * n + 99) / 100;  // ceil, exact
  return values[std::max<std::size_t>(rank, 1) - 1];
}

/// Keeps the triples scoring at least the p-th percentile cutoff; the
/// universe is preserved.
inline RelatednessSet percentile_threshold(const RelatednessSet& sc, int p) {
  const double cutoff = percentile_cutoff(sc, p);
  RelatednessSet out(sc.kind());
  for (const auto& id : sc.universe()) out.add_to_universe(id);
  for (const auto& [pair, s] : sc.scores()) {
    if (s >= cutoff) out.insert(pair.first, pair.second, s);
  }
  return out;
}

}  // namespace skg
