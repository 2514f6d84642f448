#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "entail/errors.hpp"
#include "entail/lexkb.hpp"
#include "test_support.hpp"

namespace entail {
namespace {

using testing::fixture_kb;
using testing::kb_from;

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Floyd-Warshall over the undirected IS_A graph, built straight from edges().
struct DistanceOracle {
  std::map<std::string, int> index;
  std::vector<std::vector<int>> dist;

  explicit DistanceOracle(const LexKB& kb) {
    for (const auto& s : kb.synsets()) index.emplace(s.id.value, static_cast<int>(index.size()));
    const int n = static_cast<int>(index.size());
    dist.assign(n, std::vector<int>(n, kInf));
    for (int i = 0; i < n; ++i) dist[i][i] = 0;
    for (const auto& e : kb.edges()) {
      if (e.rel != SemRelation::IsA) continue;
      const int a = index.at(e.from.value), b = index.at(e.to.value);
      dist[a][b] = dist[b][a] = 1;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  }

  int operator()(const std::string& a, const std::string& b) const {
    return dist[index.at(a)][index.at(b)];
  }
};

// Depth as 1 + fewest upward hops to any parentless synset, by exhaustive
// recursion over parents.
int oracle_depth(const LexKB& kb, const std::string& id) {
  int best = kInf;
  bool has_parent = false;
  for (const auto& e : kb.edges()) {
    if (e.rel == SemRelation::IsA && e.from.value == id) {
      has_parent = true;
      best = std::min(best, 1 + oracle_depth(kb, e.to.value));
    }
  }
  return has_parent ? best : 1;
}

TEST(LexKbLoad, MinimalStream) {
  const LexKB kb = kb_from("s a n cat\ns b n animal\nr isa a b\n");
  EXPECT_EQ(kb.synset_count(), 2u);
  EXPECT_EQ(kb.edge_count(), 1u);
}

TEST(LexKbLoad, FixtureCounts) {
  // Counted from data/mini_wordnet.kb: 6 noun + 9 verb synsets, 10 edges.
  EXPECT_EQ(fixture_kb().synset_count(), 15u);
  EXPECT_EQ(fixture_kb().edge_count(), 10u);
}

TEST(LexKbLoad, SelfLoopIsACycle) {
  EXPECT_THROW(kb_from("s n1 n thing\nr isa n1 n1\n"), ValidationError);
}

TEST(LexKbLoad, LongerCycleRejected) {
  EXPECT_THROW(kb_from("s v1 v a\ns v2 v b\ns v3 v c\nr isa v1 v2\nr entail v2 v3\nr cause v3 v1\n"),
               ValidationError);
}

TEST(LexKbLoad, DanglingEndpoint) {
  EXPECT_THROW(kb_from("s n1 n thing\nr isa n1 n9\n"), ValidationError);
}

TEST(LexKbLoad, EntailMustJoinVerbs) {
  EXPECT_THROW(kb_from("s n1 n a\ns n2 n b\nr entail n1 n2\n"), ValidationError);
  EXPECT_THROW(kb_from("s n1 n a\ns v1 v b\nr isa n1 v1\n"), ValidationError);
}

TEST(LexKbLoad, MalformedLineReportsLineNumber) {
  try {
    kb_from("# header\ns n1 n thing\ns n2 q other\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where(), 3u);
  }
  EXPECT_THROW(kb_from("x n1 n thing\n"), ParseError);
  EXPECT_THROW(kb_from("s n1 n\n"), ParseError);
  EXPECT_THROW(kb_from("s n1 n a,,b\n"), ParseError);
  EXPECT_THROW(kb_from("s n1 n a\ns n1 n b\n"), ParseError);
  EXPECT_THROW(kb_from("s n1 n a\nr likes n1 n1\n"), ParseError);
}

TEST(LexKbLoad, CommentsAndDuplicateEdges) {
  const LexKB kb = kb_from("s n1 n a # trailing\n\ns n2 n b\nr isa n1 n2\nr isa n1 n2\n");
  EXPECT_EQ(kb.edge_count(), 1u);
}

TEST(LexKbLookup, SynsetsOf) {
  const auto& kb = fixture_kb();
  EXPECT_EQ(kb.synsets_of("america", Pos::Noun), std::vector<SynsetId>{SynsetId{"n5"}});
  EXPECT_TRUE(kb.synsets_of("zzz").empty());
  EXPECT_EQ(kb.synsets_of("us"), std::vector<SynsetId>{SynsetId{"n5"}});
  EXPECT_EQ(kb.synsets_of("US"), std::vector<SynsetId>{SynsetId{"n5"}});
  EXPECT_TRUE(kb.synsets_of("us", Pos::Verb).empty());
}

TEST(LexKbLookup, UnknownSynsetIsLookupError) {
  EXPECT_THROW(fixture_kb().isa_path_length(SynsetId{"n3"}, SynsetId{"n99"}), LookupError);
  EXPECT_THROW(fixture_kb().synset(SynsetId{"zz"}), LookupError);
}

TEST(LexKbPath, FixtureLengths) {
  const auto& kb = fixture_kb();
  EXPECT_EQ(kb.isa_path_length(SynsetId{"n3"}, SynsetId{"n2"}), 1);
  EXPECT_EQ(kb.isa_path_length(SynsetId{"n3"}, SynsetId{"n3"}), 0);
  EXPECT_EQ(kb.isa_path_length(SynsetId{"v3"}, SynsetId{"v4"}), 3);
  EXPECT_EQ(kb.isa_path_length(SynsetId{"n3"}, SynsetId{"n4"}), std::nullopt);
  EXPECT_EQ(kb.isa_path_length(SynsetId{"n3"}, SynsetId{"v3"}), std::nullopt);
  // entail/cause edges are not part of the taxonomy
  EXPECT_EQ(kb.isa_path_length(SynsetId{"v5"}, SynsetId{"v6"}), std::nullopt);
}

TEST(LexKbPath, AgreesWithFloydWarshallOnFixture) {
  const auto& kb = fixture_kb();
  const DistanceOracle oracle(kb);
  for (const auto& a : kb.synsets()) {
    for (const auto& b : kb.synsets()) {
      const auto got = kb.isa_path_length(a.id, b.id);
      const int want = a.pos == b.pos ? oracle(a.id.value, b.id.value) : kInf;
      if (want >= kInf) {
        EXPECT_FALSE(got.has_value()) << a.id.value << " " << b.id.value;
      } else {
        EXPECT_EQ(got, want) << a.id.value << " " << b.id.value;
      }
    }
  }
}

TEST(LexKbSimilarity, FixtureValues) {
  const auto& kb = fixture_kb();
  EXPECT_DOUBLE_EQ(kb.similarity("us", "america", SimMeasure::Path), 1.0);
  EXPECT_NEAR(kb.similarity("relative", "uncle", SimMeasure::Path), 0.5, 1e-9);
  EXPECT_NEAR(kb.similarity("emigrate", "come", SimMeasure::Path), 0.25, 1e-9);
  EXPECT_NEAR(kb.similarity("emigrate", "come", SimMeasure::Wup), 0.4, 1e-9);
  // LCH: D = 3 for verbs, len 3 -> ln(6/4)/ln(6)
  EXPECT_NEAR(kb.similarity("emigrate", "come", SimMeasure::Lch), std::log(1.5) / std::log(6.0), 1e-12);
}

TEST(LexKbSimilarity, UnknownAndCrossPos) {
  const auto& kb = fixture_kb();
  EXPECT_EQ(kb.similarity("zzz", "uncle", SimMeasure::Path), 0.0);
  EXPECT_EQ(kb.similarity("zzz", "zzz", SimMeasure::Wup), 0.0);
  EXPECT_EQ(kb.similarity("uncle", "come", SimMeasure::Path), 0.0);
  EXPECT_EQ(kb.similarity("uncle", "relative", SimMeasure::Path, Pos::Verb), 0.0);
}

TEST(LexKbSimilarity, DepthsAndSubsumer) {
  const auto& kb = fixture_kb();
  EXPECT_EQ(kb.depth(SynsetId{"v1"}), 1);
  EXPECT_EQ(kb.depth(SynsetId{"v3"}), 3);
  EXPECT_EQ(kb.depth(SynsetId{"v4"}), 2);
  EXPECT_EQ(kb.max_depth(Pos::Noun), 3);
  EXPECT_EQ(kb.max_depth(Pos::Adj), 0);
  EXPECT_EQ(kb.lowest_common_subsumer(SynsetId{"v3"}, SynsetId{"v4"}), SynsetId{"v1"});
  EXPECT_EQ(kb.lowest_common_subsumer(SynsetId{"n3"}, SynsetId{"n5"}), std::nullopt);
  for (const auto& s : kb.synsets()) EXPECT_EQ(kb.depth(s.id), oracle_depth(kb, s.id.value));
}

TEST(LexKbSimilarity, SymmetricAndReflexiveOnFixture) {
  const auto& kb = fixture_kb();
  std::vector<std::string> words;
  for (const auto& s : kb.synsets())
    for (const auto& l : s.lemmas) words.push_back(l);
  for (SimMeasure m : {SimMeasure::Path, SimMeasure::Wup, SimMeasure::Lch}) {
    for (const auto& a : words) {
      EXPECT_DOUBLE_EQ(kb.similarity(a, a, m), 1.0) << a;
      for (const auto& b : words) {
        EXPECT_DOUBLE_EQ(kb.similarity(a, b, m), kb.similarity(b, a, m)) << a << " " << b;
      }
    }
  }
}

TEST(LexKbProperties, RandomTaxonomiesStayInRangeAndSatisfyTriangle) {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    const int n = 4 + round % 12;
    const LexKB kb = kb_from(testing::random_taxonomy(rng, n, 1 + round % 2, round % 4));
    const DistanceOracle oracle(kb);
    for (const auto& a : kb.synsets()) {
      for (const auto& b : kb.synsets()) {
        const auto ab = kb.isa_path_length(a.id, b.id);
        const int want = oracle(a.id.value, b.id.value);
        ASSERT_EQ(ab.value_or(kInf), want);
        for (SimMeasure m : {SimMeasure::Path, SimMeasure::Wup, SimMeasure::Lch}) {
          const double s = kb.synset_similarity(a.id, b.id, m);
          ASSERT_GE(s, 0.0);
          ASSERT_LE(s, 1.0);
        }
        for (const auto& c : kb.synsets()) {
          const auto bc = kb.isa_path_length(b.id, c.id);
          const auto ac = kb.isa_path_length(a.id, c.id);
          if (ab && bc) {
            ASSERT_TRUE(ac.has_value());
            ASSERT_LE(*ac, *ab + *bc);
          }
        }
      }
    }
  }
}

TEST(LexKbProperties, WupOnTreesMatchesDepthFormula) {
  std::mt19937 rng(11);
  for (int round = 0; round < 30; ++round) {
    const LexKB kb = kb_from(testing::random_taxonomy(rng, 3 + round % 10, 1, 0));
    for (const auto& a : kb.synsets()) {
      for (const auto& b : kb.synsets()) {
        // brute-force deepest common ancestor: in a tree it lies on both root paths
        std::vector<std::string> up_a{a.id.value};
        while (true) {
          const auto& cur = up_a.back();
          std::string parent;
          for (const auto& e : kb.edges())
            if (e.from.value == cur) parent = e.to.value;
          if (parent.empty()) break;
          up_a.push_back(parent);
        }
        std::string lcs = b.id.value;
        while (std::find(up_a.begin(), up_a.end(), lcs) == up_a.end()) {
          for (const auto& e : kb.edges())
            if (e.from.value == lcs) { lcs = e.to.value; break; }
        }
        const double want = 2.0 * oracle_depth(kb, lcs) /
                            (oracle_depth(kb, a.id.value) + oracle_depth(kb, b.id.value));
        ASSERT_NEAR(kb.synset_similarity(a.id, b.id, SimMeasure::Wup), want, 1e-12);
      }
    }
  }
}

TEST(LexKbProperties, PathSimilarityDecreasesAlongChain) {
  std::ostringstream text;
  const int n = 10;
  for (int i = 0; i < n; ++i) text << "s n" << i << " n w" << i << "\n";
  for (int i = 1; i < n; ++i) text << "r isa n" << i << " n" << i - 1 << "\n";
  const LexKB kb = kb_from(text.str());
  double previous = 2.0;
  for (int i = 0; i < n; ++i) {
    const double s = kb.similarity("w0", "w" + std::to_string(i), SimMeasure::Path);
    EXPECT_LT(s, previous);
    EXPECT_DOUBLE_EQ(s, 1.0 / (1.0 + i));
    previous = s;
  }
}

}  // namespace
}  // namespace entail
