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

// Seeded generator of publication records with latent research groups. Used
// for the bundled sample corpora and for randomized pipeline tests.

#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "skg/evaluation.hpp"
#include "skg/ingest.hpp"

namespace skg {

struct CorpusSpec {
  std::uint64_t seed = 7;
  std::size_t records = 200;
  std::size_t groups = 10;
  std::size_t group_size = 6;
  int first_year = 2010;
  int last_year = 2018;
  // Venue series; editions are `<series>-<year>`. The first one is the focus
  // series written to the manifest.
  std::vector<std::string> series = {"iswc", "eswc", "kcap"};
  double focus_share = 0.5;       // probability a paper goes to the focus series
  double outsider_share = 0.1;    // probability of one author from another group
  double lead_share = 0.0;        // probability the group's first member is an author
  std::size_t min_authors = 2;
  std::size_t max_authors = 3;
};

struct Corpus {
  std::vector<PublicationRecord> records;
  DatasetManifest manifest;
  std::map<std::string, std::size_t> group_of;  // latent group per researcher id
};

namespace detail {

inline std::string pad(std::size_t v, std::size_t width) {
  std::string s = std::to_string(v);
  return std::string(s.size() < width ? width - s.size() : 0, '0') + s;
}

inline std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
  return s;
}

}  // namespace detail

/// Papers are spread evenly over the years. Each paper belongs to a random
/// group, draws its authors from that group with per-member activity weights
/// and goes either to the focus series or to the group's home series.
inline Corpus generate_corpus(const CorpusSpec& spec) {
  if (spec.groups == 0 || spec.group_size < spec.min_authors || spec.min_authors < 1 ||
      spec.max_authors < spec.min_authors || spec.series.empty() || spec.last_year < spec.first_year ||
      spec.first_year < kMinYear || spec.last_year > kMaxYear) {
    throw Error(Errc::InvalidSpec, "corpus spec violates its invariants");
  }
  std::mt19937_64 rng(spec.seed);
  Corpus corpus;
  const std::size_t n_researchers = spec.groups * spec.group_size;
  std::vector<double> activity(n_researchers);
  std::vector<std::size_t> home(spec.groups);
  for (std::size_t g = 0; g < spec.groups; ++g) {
    home[g] = spec.series.size() == 1 ? 0 : 1 + g % (spec.series.size() - 1);
    for (std::size_t m = 0; m < spec.group_size; ++m) activity[g * spec.group_size + m] = 0.2 + uniform01(rng);
  }
  // Ids are a seeded permutation so that id order carries no group signal.
  std::vector<std::size_t> label(n_researchers);
  std::iota(label.begin(), label.end(), std::size_t{0});
  for (std::size_t i = n_researchers; i > 1; --i) std::swap(label[i - 1], label[uniform_index(rng, i)]);
  const std::size_t width = std::to_string(n_researchers - 1).size();
  auto researcher_id = [&](std::size_t r) { return "r:" + detail::pad(label[r], width); };
  auto researcher_name = [&](std::size_t r) { return "Researcher " + std::to_string(label[r]); };
  for (std::size_t r = 0; r < n_researchers; ++r) corpus.group_of.emplace(researcher_id(r), r / spec.group_size);

  const auto years = static_cast<std::size_t>(spec.last_year - spec.first_year + 1);
  for (std::size_t i = 0; i < spec.records; ++i) {
    const int year = spec.first_year + static_cast<int>(i * years / spec.records);
    const std::size_t g = uniform_index(rng, spec.groups);
    const std::size_t n_authors =
        spec.min_authors + uniform_index(rng, spec.max_authors - spec.min_authors + 1);

    std::vector<std::size_t> pool;
    std::vector<double> weight;
    std::vector<std::size_t> authors;
    const bool lead = spec.lead_share > 0 && uniform01(rng) < spec.lead_share;
    if (lead) authors.push_back(g * spec.group_size);
    for (std::size_t m = lead ? 1 : 0; m < spec.group_size; ++m) {
      pool.push_back(g * spec.group_size + m);
      weight.push_back(activity[g * spec.group_size + m]);
    }
    while (authors.size() < n_authors) {
      double total = 0;
      for (double w : weight) total += w;
      double x = uniform01(rng) * total;
      std::size_t pick = 0;
      while (pick + 1 < pool.size() && x >= weight[pick]) x -= weight[pick++];
      authors.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      weight.erase(weight.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (spec.groups > 1 && uniform01(rng) < spec.outsider_share) {
      std::size_t other = uniform_index(rng, spec.groups - 1);
      if (other >= g) ++other;
      authors.push_back(other * spec.group_size + uniform_index(rng, spec.group_size));
    }

    const std::size_t s = uniform01(rng) < spec.focus_share ? 0 : home[g];
    PublicationRecord rec;
    rec.paper_id = "p:" + std::to_string(year) + "-" + detail::pad(i, 4);
    rec.title = "Synthetic paper " + std::to_string(i);
    for (auto r : authors) rec.authors.push_back({researcher_id(r), researcher_name(r)});
    rec.venue_id = spec.series[s] + "-" + std::to_string(year);
    rec.venue_name = detail::upper(spec.series[s]) + " " + std::to_string(year);
    rec.year = year;
    corpus.records.push_back(std::move(rec));
  }

  corpus.manifest.record_count = corpus.records.size();
  corpus.manifest.source_description = "synthetic corpus: " + std::to_string(spec.groups) + " groups of " +
                                       std::to_string(spec.group_size) + ", seed " + std::to_string(spec.seed);
  for (int y = spec.first_year; y <= spec.last_year; ++y) {
    corpus.manifest.focus_venue_series.insert(EntityId(spec.series[0] + "-" + std::to_string(y)));
  }
  return corpus;
}

}  // namespace skg
