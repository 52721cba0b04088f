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

// Typed scholarly knowledge graph: researchers, publications and venues
// connected by a closed vocabulary of properties.

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "skg/error.hpp"

namespace skg {

/// Opaque, non-empty entity identifier. Ordering is the lexicographic order of
/// the underlying string and is used as the canonical tie-breaking order
/// throughout the library.
class EntityId {
 public:
  EntityId() = delete;
  explicit EntityId(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw Error(Errc::InvalidParameter, "entity id must be non-empty");
  }
  EntityId(const char* value) : EntityId(std::string(value)) {}

  const std::string& str() const noexcept { return value_; }

  friend bool operator==(const EntityId&, const EntityId&) = default;
  friend auto operator<=>(const EntityId&, const EntityId&) = default;

 private:
  std::string value_;
};

inline std::ostream& operator<<(std::ostream& os, const EntityId& id) { return os << id.str(); }

enum class EntityKind { Researcher, Publication, Venue };

constexpr std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Researcher: return "Researcher";
    case EntityKind::Publication: return "Publication";
    case EntityKind::Venue: return "Venue";
  }
  return "";
}

inline EntityKind parse_entity_kind(std::string_view text) {
  for (auto kind : {EntityKind::Researcher, EntityKind::Publication, EntityKind::Venue}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(Errc::InvalidParameter, "unknown entity kind '" + std::string(text) + "'");
}

enum class Property { Author, CoAuthor, PublishedIn, Year, RdfType };

constexpr std::string_view to_string(Property p) {
  switch (p) {
    case Property::Author: return "author";
    case Property::CoAuthor: return "co-author";
    case Property::PublishedIn: return "published-in";
    case Property::Year: return "year";
    case Property::RdfType: return "rdf-type";
  }
  return "";
}

/// Rejects anything outside the closed vocabulary.
inline Property parse_property(std::string_view text) {
  for (auto p : {Property::Author, Property::CoAuthor, Property::PublishedIn, Property::Year,
                 Property::RdfType}) {
    if (text == to_string(p)) return p;
  }
  throw Error(Errc::InvalidParameter, "unknown property label '" + std::string(text) + "'");
}

/// Object of an edge: an entity reference or an integer year literal.
using EdgeObject = std::variant<EntityId, int>;

struct Edge {
  EntityId subject;
  Property property;
  EdgeObject object;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend bool operator<(const Edge& a, const Edge& b) {
    return std::tie(a.subject, a.property, a.object) < std::tie(b.subject, b.property, b.object);
  }
};

/// Unordered pair of distinct entities, stored with first < second.
struct IdPair {
  EntityId first;
  EntityId second;

  static IdPair of(const EntityId& a, const EntityId& b) {
    if (a == b) throw Error(Errc::InvalidParameter, "pair endpoints must differ: " + a.str());
    return a < b ? IdPair{a, b} : IdPair{b, a};
  }

  friend bool operator==(const IdPair&, const IdPair&) = default;
  friend auto operator<=>(const IdPair&, const IdPair&) = default;
};

using IdSet = std::set<EntityId>;

class ScholarlyKnowledgeGraph {
 public:
  /// Registers an entity. Re-adding an id with the same kind is a no-op; a
  /// different kind raises DuplicateEntity.
  void add_entity(const EntityId& id, EntityKind kind, std::string name = {}) {
    if (auto it = entities_.find(id); it != entities_.end()) {
      if (it->second != kind) {
        throw Error(Errc::DuplicateEntity, id.str() + " already registered as " +
                                               std::string(to_string(it->second)));
      }
      return;
    }
    entities_.emplace(id, kind);
    names_.emplace(id, name.empty() ? id.str() : std::move(name));
    ++kind_counts_[static_cast<std::size_t>(kind)];
  }

  void add_edge(const EntityId& subject, Property property, const EntityId& object) {
    const EntityKind s = kind_of(subject);
    const EntityKind o = kind_of(object);
    switch (property) {
      case Property::Author:
        require(s == EntityKind::Researcher && o == EntityKind::Publication, subject, property, object);
        break;
      case Property::PublishedIn:
        require(s == EntityKind::Publication && o == EntityKind::Venue, subject, property, object);
        break;
      case Property::CoAuthor:
        require(s == EntityKind::Researcher && o == EntityKind::Researcher && subject != object,
                subject, property, object);
        break;
      case Property::Year:
      case Property::RdfType:
        // year takes a literal; rdf-type is implied by the entity kind.
        require(false, subject, property, object);
        break;
    }
    if (!edges_.insert(Edge{subject, property, object}).second) return;
    if (property == Property::Author) {
      papers_by_author_[subject].insert(object);
      authors_by_paper_[object].insert(subject);
    } else if (property == Property::PublishedIn) {
      venues_by_paper_[subject].insert(object);
      papers_by_venue_[object].insert(subject);
    }
  }

  void add_edge(const EntityId& subject, Property property, int literal) {
    const EntityKind s = kind_of(subject);
    if (property != Property::Year || s != EntityKind::Publication) {
      throw Error(Errc::KindViolation, "integer literal only allowed as year of a Publication: " +
                                           subject.str() + " " + std::string(to_string(property)));
    }
    if (edges_.insert(Edge{subject, property, literal}).second) years_[subject].insert(literal);
  }

  bool contains(const EntityId& id) const { return entities_.count(id) != 0; }

  EntityKind kind_of(const EntityId& id) const {
    auto it = entities_.find(id);
    if (it == entities_.end()) throw Error(Errc::UnknownEntity, id.str());
    return it->second;
  }

  const std::string& display_name(const EntityId& id) const {
    auto it = names_.find(id);
    if (it == names_.end()) throw Error(Errc::UnknownEntity, id.str());
    return it->second;
  }

  std::size_t entity_count() const noexcept { return entities_.size(); }
  std::size_t count(EntityKind kind) const noexcept {
    return kind_counts_[static_cast<std::size_t>(kind)];
  }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::map<EntityId, EntityKind>& entities() const noexcept { return entities_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }

  std::vector<EntityId> entities_of(EntityKind kind) const {
    std::vector<EntityId> out;
    out.reserve(count(kind));
    for (const auto& [id, k] : entities_) {
      if (k == kind) out.push_back(id);
    }
    return out;
  }

  const IdSet& papers_by_author(const EntityId& r) const { return lookup(papers_by_author_, r); }
  const IdSet& authors_of(const EntityId& p) const { return lookup(authors_by_paper_, p); }
  const IdSet& venues_of(const EntityId& p) const { return lookup(venues_by_paper_, p); }
  const IdSet& papers_at(const EntityId& v) const { return lookup(papers_by_venue_, v); }

  std::optional<int> year_of(const EntityId& p) const {
    auto it = years_.find(p);
    if (it == years_.end() || it->second.empty()) return std::nullopt;
    return *it->second.begin();
  }

 private:
  static const IdSet& lookup(const std::map<EntityId, IdSet>& index, const EntityId& id) {
    static const IdSet empty;
    auto it = index.find(id);
    return it == index.end() ? empty : it->second;
  }

  static void require(bool ok, const EntityId& s, Property p, const EntityId& o) {
    if (!ok) {
      throw Error(Errc::KindViolation,
                  "(" + s.str() + ", " + std::string(to_string(p)) + ", " + o.str() + ")");
    }
  }

  std::map<EntityId, EntityKind> entities_;
  std::map<EntityId, std::string> names_;
  std::array<std::size_t, 3> kind_counts_{};
  std::set<Edge> edges_;
  std::map<EntityId, IdSet> papers_by_author_;
  std::map<EntityId, IdSet> authors_by_paper_;
  std::map<EntityId, IdSet> venues_by_paper_;
  std::map<EntityId, IdSet> papers_by_venue_;
  std::map<EntityId, std::set<int>> years_;
};

/// Researcher-only subgraph induced by shared publications. Each edge carries
/// the set of publications both endpoints authored.
struct CoAuthorNetwork {
  IdSet researchers;
  std::map<IdPair, IdSet> edges;

  bool contains(const EntityId& a, const EntityId& b) const {
    return a != b && edges.count(IdPair::of(a, b)) != 0;
  }
};

inline CoAuthorNetwork derive_co_author_network(const ScholarlyKnowledgeGraph& graph) {
  CoAuthorNetwork net;
  for (const auto& r : graph.entities_of(EntityKind::Researcher)) net.researchers.insert(r);
  for (const auto& p : graph.entities_of(EntityKind::Publication)) {
    const IdSet& authors = graph.authors_of(p);
    for (auto i = authors.begin(); i != authors.end(); ++i) {
      for (auto j = std::next(i); j != authors.end(); ++j) net.edges[IdPair{*i, *j}].insert(p);
    }
  }
  return net;
}

/// Publications of a researcher, optionally restricted to a set of venues.
inline IdSet papers_of(const ScholarlyKnowledgeGraph& graph, const EntityId& researcher,
                       const IdSet* venue_filter = nullptr) {
  if (graph.kind_of(researcher) != EntityKind::Researcher) {
    throw Error(Errc::WrongKind, researcher.str() + " is not a Researcher");
  }
  const IdSet& all = graph.papers_by_author(researcher);
  if (venue_filter == nullptr) return all;
  IdSet out;
  for (const auto& p : all) {
    for (const auto& v : graph.venues_of(p)) {
      if (venue_filter->count(v)) {
        out.insert(p);
        break;
      }
    }
  }
  return out;
}

/// Tab-separated `subject property object` lines in lexicographic order. Entity
/// kinds are emitted as rdf-type lines.
inline void export_triples(const ScholarlyKnowledgeGraph& graph, std::ostream& out) {
  std::vector<std::string> lines;
  lines.reserve(graph.edge_count() + graph.entity_count());
  for (const auto& [id, kind] : graph.entities()) {
    lines.push_back(id.str() + '\t' + std::string(to_string(Property::RdfType)) + '\t' +
                    std::string(to_string(kind)));
  }
  for (const auto& e : graph.edges()) {
    std::string object = std::holds_alternative<int>(e.object)
                             ? std::to_string(std::get<int>(e.object))
                             : std::get<EntityId>(e.object).str();
    lines.push_back(e.subject.str() + '\t' + std::string(to_string(e.property)) + '\t' + object);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << '\n';
}

/// Inverse of export_triples. Display names are not part of the export and
/// default to the id.
inline ScholarlyKnowledgeGraph load_triples(std::istream& in) {
  struct Row {
    std::string s, o;
    Property p;
  };
  std::vector<Row> rows;
  ScholarlyKnowledgeGraph graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw Error(Errc::InvalidParameter, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    Row row{line.substr(0, t1), line.substr(t2 + 1), parse_property(line.substr(t1 + 1, t2 - t1 - 1))};
    if (row.p == Property::RdfType) {
      graph.add_entity(EntityId(row.s), parse_entity_kind(row.o));
    } else {
      rows.push_back(std::move(row));
    }
  }
  for (const auto& r : rows) {
    if (r.p == Property::Year) {
      int year = 0;
      std::istringstream ss(r.o);
      if (!(ss >> year) || !ss.eof()) throw Error(Errc::InvalidParameter, "bad year literal " + r.o);
      graph.add_edge(EntityId(r.s), r.p, year);
    } else {
      graph.add_edge(EntityId(r.s), r.p, EntityId(r.o));
    }
  }
  return graph;
}

}  // namespace skg
