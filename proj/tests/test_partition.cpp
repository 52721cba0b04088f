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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "skg/evaluation.hpp"
#include "skg/partition.hpp"
#include "test_util.hpp"

using namespace skg;
using testing_util::code_of;

namespace {

std::vector<IdSet> groups_of(const Partition& p) {
  std::vector<IdSet> out;
  for (const auto& c : p.communities()) out.push_back(c.members);
  return out;
}

PartitionerParams semantic(double floor) {
  PartitionerParams p;
  p.merge_floor = floor;
  return p;
}

PartitionerParams kway(int k) {
  PartitionerParams p;
  p.method = PartitionMethod::Kway;
  p.k = k;
  return p;
}

// Two triangles {n0,n1,n2} and {n3,n4,n5} at 0.9 joined by n2-n3 at 0.1.
oracle::Matrix two_cliques() {
  auto w = oracle::zeros(6);
  auto set = [&](int i, int j, double s) { w[i][j] = w[j][i] = s; };
  for (int base : {0, 3}) {
    set(base, base + 1, 0.9);
    set(base, base + 2, 0.9);
    set(base + 1, base + 2, 0.9);
  }
  set(2, 3, 0.1);
  return w;
}

double mean_pairwise(const RelatednessSet& sc, const IdSet& members) {
  double sum = 0;
  double pairs = 0;
  for (auto i = members.begin(); i != members.end(); ++i) {
    for (auto j = std::next(i); j != members.end(); ++j) {
      sum += sc.score(*i, *j);
      pairs += 1;
    }
  }
  return sum / pairs;
}

void expect_cover(const Partition& p, const IdSet& universe) {
  IdSet seen;
  for (const auto& c : p.communities()) {
    ASSERT_FALSE(c.members.empty());
    for (const auto& id : c.members) ASSERT_TRUE(seen.insert(id).second) << id;
  }
  ASSERT_EQ(seen, universe);
}

RelatednessSet random_sc(std::mt19937_64& rng, std::size_t n, double density) {
  return oracle::to_sc(oracle::random_matrix(rng, n, density));
}

}  // namespace

TEST(Partition, CanonicalIdsAndValidation) {
  const auto p = Partition::from_groups({{"c", "d"}, {"a"}, {"b"}}, {"a", "b", "c", "d"});
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.communities()[0].members, IdSet{"a"});
  EXPECT_EQ(p.communities()[2].members, (IdSet{"c", "d"}));
  EXPECT_EQ(p.communities()[2].id, 2);
  EXPECT_EQ(code_of([] { Partition::from_groups({{"a"}, {"a", "b"}}, {"a", "b"}); }), Errc::InvalidParameter);
  EXPECT_EQ(code_of([] { Partition::from_groups({{"a"}}, {"a", "b"}); }), Errc::InvalidParameter);
  EXPECT_EQ(code_of([] { Partition::from_groups({{"a", "z"}}, {"a"}); }), Errc::UniverseMismatch);
}

TEST(Partition, FileRoundTrip) {
  const auto p = Partition::from_groups({{"x", "y"}, {"z"}}, {"x", "y", "z"});
  std::ostringstream out;
  write_partition(p, out);
  EXPECT_EQ(out.str(), "0\tx\n0\ty\n1\tz\n");
  std::istringstream in(out.str());
  EXPECT_EQ(read_partition(in), p);
  std::istringstream twice("0\tx\n1\tx\n");
  EXPECT_EQ(code_of([&] { read_partition(twice); }), Errc::InvalidParameter);
}

TEST(PartitionSemantic, SinglePair) {
  RelatednessSet sc;
  sc.insert("a", "b", 0.9);
  const auto p = partition_semantic(sc, semantic(0.5));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.communities()[0].members, (IdSet{"a", "b"}));
}

TEST(PartitionSemantic, CrossMergeRejected) {
  RelatednessSet sc;
  sc.insert("a", "b", 0.9);
  sc.insert("c", "d", 0.9);
  sc.insert("b", "c", 0.1);
  const auto p = partition_semantic(sc, semantic(0.5));
  EXPECT_EQ(groups_of(p), (std::vector<IdSet>{{"a", "b"}, {"c", "d"}}));
}

TEST(PartitionSemantic, FloorOneKeepsSingletons) {
  RelatednessSet sc;
  sc.insert("a", "b", 0.9);
  sc.insert("b", "c", 0.99);
  EXPECT_EQ(partition_semantic(sc, semantic(1.0)).size(), 3u);
}

TEST(PartitionSemantic, DefaultFloorIsSmallestScore) {
  RelatednessSet sc;
  sc.insert("a", "b", 0.9);
  sc.insert("b", "c", 0.6);
  sc.add_to_universe("lonely");
  // Mean of {a,b,c} is 0.5 < 0.6, so c stays apart; the isolated entity is a
  // singleton.
  EXPECT_EQ(groups_of(partition_semantic(sc)), (std::vector<IdSet>{{"a", "b"}, {"c"}, {"lonely"}}));
}

TEST(PartitionSemantic, Errors) {
  EXPECT_EQ(code_of([] { partition_semantic(RelatednessSet{}); }), Errc::EmptyRelatednessSet);
  RelatednessSet sc;
  sc.insert("a", "b", 0.9);
  EXPECT_EQ(code_of([&] { partition_semantic(sc, semantic(1.5)); }), Errc::InvalidParameter);
}

TEST(PartitionKway, KEqualsN) {
  std::mt19937_64 rng(3);
  const auto sc = random_sc(rng, 7, 0.6);
  const auto p = partition_kway(sc, kway(7));
  EXPECT_EQ(p.size(), 7u);
}

TEST(PartitionKway, KEqualsOne) {
  std::mt19937_64 rng(3);
  const auto sc = random_sc(rng, 7, 0.6);
  const auto p = partition_kway(sc, kway(1));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.communities()[0].members, sc.universe());
}

TEST(PartitionKway, TwoCliquesMatchExhaustiveMinCut) {
  const auto w = two_cliques();
  const auto [best_cut, mask] = oracle::min_bisection_cut(w);
  EXPECT_NEAR(best_cut, 0.1, 1e-12);
  oracle::Labels expected(6);
  for (std::size_t i = 0; i < 6; ++i) expected[i] = static_cast<int>((mask >> i) & 1u);
  const auto p = partition_kway(oracle::to_sc(w), kway(2));
  EXPECT_EQ(p, oracle::to_partition(expected));
  EXPECT_EQ(groups_of(p), (std::vector<IdSet>{{"n0", "n1", "n2"}, {"n3", "n4", "n5"}}));
}

TEST(PartitionKway, Errors) {
  RelatednessSet sc;
  sc.insert("a", "b", 0.5);
  EXPECT_EQ(code_of([&] { partition_kway(sc, kway(3)); }), Errc::KTooLarge);
  EXPECT_EQ(code_of([&] { partition_kway(sc, kway(0)); }), Errc::InvalidParameter);
  PartitionerParams no_k;
  no_k.method = PartitionMethod::Kway;
  EXPECT_EQ(code_of([&] { run_partitioner(sc, no_k); }), Errc::InvalidParameter);
}

TEST(PartitionerProperty, ValidCoverAndDeterminism) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 30)(rng);
    const double density = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    auto sc = random_sc(rng, n, density);
    if (sc.empty()) continue;
    // Same content inserted in a shuffled order.
    auto triples = sc.triples();
    std::shuffle(triples.begin(), triples.end(), rng);
    RelatednessSet shuffled;
    std::vector<EntityId> ids(sc.universe().begin(), sc.universe().end());
    std::shuffle(ids.begin(), ids.end(), rng);
    for (const auto& id : ids) shuffled.add_to_universe(id);
    for (const auto& t : triples) shuffled.insert(t.right, t.left, t.score);

    const auto sem = partition_semantic(sc);
    expect_cover(sem, sc.universe());
    EXPECT_EQ(sem, partition_semantic(shuffled));
    double floor = 1.0;
    for (const auto& [pair, s] : sc.scores()) floor = std::min(floor, s);
    for (const auto& c : sem.communities()) {
      if (c.members.size() > 1) EXPECT_GE(mean_pairwise(sc, c.members) + 1e-12, floor);
    }

    const int k = std::uniform_int_distribution<int>(1, static_cast<int>(n))(rng);
    auto params = kway(k);
    params.seed = 99;
    KwayTrace trace;
    const auto kw = partition_kway(sc, params, &trace);
    expect_cover(kw, sc.universe());
    EXPECT_EQ(kw.size(), static_cast<std::size_t>(k));
    EXPECT_EQ(kw, partition_kway(shuffled, kway(k)));
    EXPECT_LE(trace.final_cut, trace.cut_after_seeding + 1e-12);
    const double target = static_cast<double>(n) / k;
    for (const auto& c : kw.communities()) {
      EXPECT_GE(static_cast<double>(c.members.size()), std::max(1.0, std::floor(0.9 * target + 1e-9)));
      EXPECT_LE(static_cast<double>(c.members.size()), std::ceil(1.1 * target - 1e-9));
    }
  }
}

TEST(PartitionerProperty, PlantedRecovery) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PlantedSpec spec;
    spec.seed = seed;
    const auto planted = generate_planted(spec);
    auto sem = semantic(0.6);
    EXPECT_EQ(adjusted_rand(partition_semantic(planted.sc, sem), planted.truth), 1.0);
    EXPECT_EQ(adjusted_rand(partition_kway(planted.sc, kway(3)), planted.truth), 1.0);
  }
}
