#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <random>
#include <regex>

#include "entail/entailment.hpp"
#include "entail/lpe.hpp"
#include "test_support.hpp"

namespace entail {
namespace {

using testing::data_path;
using testing::fixture_kb;
using testing::kb_from;

constexpr SemRelation I = SemRelation::IsA;
constexpr SemRelation C = SemRelation::CauseTo;
constexpr SemRelation E = SemRelation::Entail;

char letter(SemRelation r) { return r == I ? 'i' : r == C ? 'c' : 'e'; }

std::string letters(std::span<const SemRelation> rels) {
  std::string s;
  for (SemRelation r : rels) s += letter(r);
  return s;
}

const std::regex& pattern_oracle() {
  static const std::regex re("i*e*|[ic]*");
  return re;
}

std::vector<std::string> lemmas_of_file(const char* name) {
  std::ifstream in(data_path(name));
  const auto sentences = parse_annotated(in);
  return content_words(sentences.at(0));
}

// Random verb DAG: edges point from higher to lower index. `family` 0 mixes
// isa with entail edges into sink synsets; family 1 mixes isa with cause.
struct RandomKb {
  int n = 0;
  std::vector<std::tuple<SemRelation, int, int>> edges;

  std::string text() const {
    std::ostringstream out;
    for (int i = 0; i < n; ++i) out << "s v" << i << " v w" << i << "\n";
    for (const auto& [rel, from, to] : edges)
      out << "r " << to_string(rel) << " v" << from << " v" << to << "\n";
    return out.str();
  }
};

RandomKb random_kb(std::mt19937& rng, int family) {
  RandomKb kb;
  kb.n = 5 + static_cast<int>(rng() % 8);
  const int sinks = family == 0 ? 2 : 0;  // v0, v1 are entail-only sinks
  for (int from = sinks + 1; from < kb.n; ++from) {
    const int out_degree = static_cast<int>(rng() % 3);
    for (int k = 0; k < out_degree; ++k) {
      std::uniform_int_distribution<int> pick(0, from - 1);
      const int to = pick(rng);
      SemRelation rel;
      if (to < sinks) {
        rel = E;
      } else if (family == 0) {
        rel = I;
      } else {
        rel = rng() % 2 ? I : C;
      }
      kb.edges.emplace_back(rel, from, to);
    }
  }
  return kb;
}

// All-pairs directed shortest path lengths over every relation.
std::vector<std::vector<int>> directed_distances(const RandomKb& kb) {
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(kb.n, std::vector<int>(kb.n, inf));
  for (const auto& [rel, from, to] : kb.edges) d[from][to] = 1;
  for (int k = 0; k < kb.n; ++k)
    for (int i = 0; i < kb.n; ++i)
      for (int j = 0; j < kb.n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

void expect_well_formed(const LexKB& kb, const LpePath& p, const std::string& w1, const std::string& w2) {
  ASSERT_EQ(p.synsets.size(), p.relations.size() + 1);
  ASSERT_GE(p.length(), 1u);
  const auto sources = kb.synsets_of(w1);
  ASSERT_NE(std::find(sources.begin(), sources.end(), p.synsets.front()), sources.end());
  const auto targets = kb.synsets_of(w2);
  ASSERT_NE(std::find(targets.begin(), targets.end(), p.synsets.back()), targets.end());
  SemRelation agg = p.relations.front();
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    bool edge_exists = false;
    for (const auto& e : kb.out_edges(p.synsets[i]))
      edge_exists = edge_exists || (e.to == p.synsets[i + 1] && e.rel == p.relations[i]);
    ASSERT_TRUE(edge_exists) << render(p);
    if (i) agg = compose_relations(agg, p.relations[i]);
  }
  ASSERT_EQ(p.aggregate, agg);
}

TEST(Compose, NineRules) {
  EXPECT_EQ(compose_relations(I, I), I);
  EXPECT_EQ(compose_relations(I, E), E);
  EXPECT_EQ(compose_relations(E, I), E);
  EXPECT_EQ(compose_relations(E, E), E);
  EXPECT_EQ(compose_relations(I, C), C);
  EXPECT_EQ(compose_relations(C, I), C);
  EXPECT_EQ(compose_relations(C, C), C);
  EXPECT_EQ(compose_relations(C, E), E);
  EXPECT_EQ(compose_relations(E, C), E);
}

TEST(Compose, AssociativeAndCommutative) {
  for (SemRelation a : {I, C, E}) {
    for (SemRelation b : {I, C, E}) {
      EXPECT_EQ(compose_relations(a, b), compose_relations(b, a));
      for (SemRelation c : {I, C, E}) {
        EXPECT_EQ(compose_relations(compose_relations(a, b), c), compose_relations(a, compose_relations(b, c)));
      }
    }
  }
}

TEST(Pattern, AgreesWithRegexOnAllShortSequences) {
  std::vector<SemRelation> rels;
  int checked = 0;
  const auto all = [&](auto&& self, std::size_t len) -> void {
    EXPECT_EQ(matches_lpe_pattern(rels), std::regex_match(letters(rels), pattern_oracle())) << letters(rels);
    ++checked;
    if (len == 6) return;
    for (SemRelation r : {I, C, E}) {
      rels.push_back(r);
      self(self, len + 1);
      rels.pop_back();
    }
  };
  all(all, 0);
  EXPECT_EQ(checked, 1 + 3 + 9 + 27 + 81 + 243 + 729);
  EXPECT_TRUE(matches_lpe_pattern(std::vector{I, I, E, E}));
  EXPECT_FALSE(matches_lpe_pattern(std::vector{E, I}));
  EXPECT_FALSE(matches_lpe_pattern(std::vector{C, E}));
  EXPECT_TRUE(matches_lpe_pattern(std::vector{C, I, C}));
}

TEST(FindLpe, FixtureExamples) {
  const auto& kb = fixture_kb();
  auto p = find_lpe(kb, "snore", "sleep");
  ASSERT_TRUE(p);
  EXPECT_EQ(render(*p), "v5 -[entail]-> v6 (aggregate=entail)");

  p = find_lpe(kb, "murder", "die");
  ASSERT_TRUE(p);
  EXPECT_EQ(render(*p), "v9 -[isa]-> v7 -[cause]-> v8 (aggregate=cause)");
  EXPECT_EQ(p->source_word, "murder");
  EXPECT_EQ(p->target_word, "die");

  p = find_lpe(kb, "uncle", "relative");
  ASSERT_TRUE(p);
  EXPECT_EQ(render(*p), "n3 -[isa]-> n2 (aggregate=isa)");

  EXPECT_FALSE(find_lpe(kb, "relative", "uncle"));
  EXPECT_FALSE(find_lpe(kb, "sleep", "snore"));
  EXPECT_FALSE(find_lpe(kb, "us", "america"));  // same synset, no edge
  EXPECT_FALSE(find_lpe(kb, "zzz", "person"));
  EXPECT_EQ(find_lpe(kb, "Uncle", "PERSON")->length(), 2u);
  EXPECT_EQ(find_lpe(kb, "emigrated", "travel")->length(), 2u);
  EXPECT_FALSE(find_lpe(kb, "emigrate", "travel", 1));
  EXPECT_FALSE(find_lpe(kb, "emigrate", "come"));
}

TEST(FindLpe, AllWitnesses) {
  const LexKB kb = kb_from("s v1 v a\ns v2 v b\ns v3 v c\ns v4 v d\n"
                           "r isa v1 v2\nr isa v2 v4\nr cause v1 v3\nr isa v3 v4\nr isa v1 v4\n");
  const auto all = find_all_lpe(kb, "a", "d");
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(render(all[0]), "v1 -[isa]-> v4 (aggregate=isa)");
  EXPECT_EQ(all[1].length(), 2u);
  EXPECT_EQ(all[2].length(), 2u);
  EXPECT_EQ(find_lpe(kb, "a", "d")->length(), 1u);
  EXPECT_TRUE(find_all_lpe(kb, "d", "a").empty());
}

TEST(FindLpeProperties, ShortestValidAndPatternShaped) {
  std::mt19937 rng(53);
  int found = 0;
  for (int round = 0; round < 200; ++round) {
    const RandomKb shape = random_kb(rng, round % 2);
    const LexKB kb = kb_from(shape.text());
    const auto dist = directed_distances(shape);
    for (int a = 0; a < shape.n; ++a) {
      for (int b = 0; b < shape.n; ++b) {
        const std::string w1 = "w" + std::to_string(a), w2 = "w" + std::to_string(b);
        const auto p = find_lpe(kb, w1, w2);
        const bool reachable = dist[a][b] <= 6;
        ASSERT_EQ(p.has_value(), reachable) << shape.text() << w1 << " " << w2;
        if (!p) continue;
        ++found;
        expect_well_formed(kb, *p, w1, w2);
        ASSERT_EQ(static_cast<int>(p->length()), dist[a][b]);
        ASSERT_TRUE(std::regex_match(letters(p->relations), pattern_oracle())) << render(*p);
        const auto all = find_all_lpe(kb, w1, w2);
        ASSERT_FALSE(all.empty());
        ASSERT_EQ(all.front().length(), p->length());
        for (std::size_t k = 1; k < all.size(); ++k) ASSERT_LE(all[k - 1].length(), all[k].length());
        for (const auto& q : all) ASSERT_TRUE(std::regex_match(letters(q.relations), pattern_oracle()));
      }
    }
  }
  EXPECT_GT(found, 500);
}

TEST(FindLpeProperties, Transitive) {
  std::mt19937 rng(59);
  for (int round = 0; round < 150; ++round) {
    const RandomKb shape = random_kb(rng, round % 2);
    const LexKB kb = kb_from(shape.text());
    for (int a = 0; a < shape.n; ++a) {
      for (int b = 0; b < shape.n; ++b) {
        const auto ab = find_lpe(kb, "w" + std::to_string(a), "w" + std::to_string(b), 3);
        if (!ab) continue;
        for (int c = 0; c < shape.n; ++c) {
          const auto bc = find_lpe(kb, "w" + std::to_string(b), "w" + std::to_string(c), 3);
          if (!bc) continue;
          const auto ac = find_lpe(kb, "w" + std::to_string(a), "w" + std::to_string(c), 6);
          ASSERT_TRUE(ac);
          ASSERT_LE(ac->length(), ab->length() + bc->length());
        }
      }
    }
  }
}

TEST(FindLpeProperties, AddingEdgesNeverRemovesPaths) {
  std::mt19937 rng(61);
  for (int round = 0; round < 150; ++round) {
    RandomKb shape = random_kb(rng, 1);
    const LexKB before = kb_from(shape.text());
    std::uniform_int_distribution<int> from(1, shape.n - 1);
    const int f = from(rng);
    std::uniform_int_distribution<int> to(0, f - 1);
    shape.edges.emplace_back(rng() % 2 ? I : C, f, to(rng));
    const LexKB after = kb_from(shape.text());
    for (int a = 0; a < shape.n; ++a) {
      for (int b = 0; b < shape.n; ++b) {
        const std::string w1 = "w" + std::to_string(a), w2 = "w" + std::to_string(b);
        const auto old_path = find_lpe(before, w1, w2);
        if (!old_path) continue;
        const auto new_path = find_lpe(after, w1, w2);
        ASSERT_TRUE(new_path);
        ASSERT_LE(new_path->length(), old_path->length());
      }
    }
  }
}

TEST(ContentWords, TokensAndForms) {
  const auto t = lemmas_of_file("t_george.ann");
  EXPECT_EQ(t, (std::vector<std::string>{"john", "son", "george", "emigrate", "mike", "uncle", "us", "1969"}));
  const auto h = lemmas_of_file("h_george.ann");
  EXPECT_EQ(h, (std::vector<std::string>{"george", "relative", "mike", "come", "america"}));
  EXPECT_EQ(content_words(parse_logic_form("man(x1) & snore(e1, x1) & man(x2)")),
            (std::vector<std::string>{"man", "snore"}));
}

TEST(EntailsLpe, WorkedExample) {
  const auto& kb = fixture_kb();
  const auto t = lemmas_of_file("t_george.ann");
  const auto h = lemmas_of_file("h_george.ann");
  LpeConfig cfg;
  cfg.tau_pairs = 1;
  auto v = entails_lpe(t, h, kb, cfg);
  EXPECT_DOUBLE_EQ(v.score, 2.0);
  EXPECT_TRUE(v.entailed);
  EXPECT_EQ(v.reason, "paths");
  ASSERT_EQ(v.pairs.size(), 2u);
  EXPECT_EQ(render(v.pairs[0]), "pair uncle -> relative: n3 -[isa]-> n2 (aggregate=isa)");
  EXPECT_EQ(render(v.pairs[1]), "pair us -> america: n5 (aggregate=synonym)");

  v = entails_lpe(h, t, kb, cfg);
  EXPECT_DOUBLE_EQ(v.score, 1.0);
  EXPECT_FALSE(v.entailed);

  cfg.count_synonyms = false;
  v = entails_lpe(t, h, kb, cfg);
  EXPECT_DOUBLE_EQ(v.score, 1.0);
}

TEST(EntailsLpe, SmallCases) {
  const auto& kb = fixture_kb();
  const LpeConfig cfg;
  const std::vector<std::string> snore{"man", "snore"}, sleep{"man", "sleep"}, none{};
  auto v = entails_lpe(snore, sleep, kb, cfg);
  EXPECT_TRUE(v.entailed);
  EXPECT_DOUBLE_EQ(v.score, 2.0);  // man/man shares a synset, snore -> sleep
  v = entails_lpe(none, sleep, kb, cfg);
  EXPECT_FALSE(v.entailed);
  EXPECT_EQ(v.reason, "no-paths");
  const std::vector<std::string> dup{"Snore", "snore", "SNORE"}, target{"sleep"};
  EXPECT_DOUBLE_EQ(entails_lpe(dup, target, kb, cfg).score, 1.0);

  LpeConfig all = cfg;
  all.all_witnesses = true;
  const std::vector<std::string> murder{"murder"}, die{"die"};
  v = entails_lpe(murder, die, kb, all);
  ASSERT_EQ(v.pairs.size(), 1u);
  EXPECT_EQ(v.pairs[0].alternatives.size(), 1u);
}

TEST(EntailsLpeProperties, CountGrowsWithMaxLenAndShrinksWithThreshold) {
  std::mt19937 rng(67);
  for (int round = 0; round < 200; ++round) {
    const RandomKb shape = random_kb(rng, round % 2);
    const LexKB kb = kb_from(shape.text());
    std::vector<std::string> t, h;
    for (int i = 0; i < shape.n; ++i) (rng() % 2 ? t : h).push_back("w" + std::to_string(i));
    double previous = -1;
    for (int len = 1; len <= 6; ++len) {
      LpeConfig cfg;
      cfg.max_len = len;
      const double count = entails_lpe(t, h, kb, cfg).score;
      ASSERT_GE(count, previous);
      previous = count;
      ASSERT_LE(count, static_cast<double>(t.size() * h.size()));
    }
    for (double tau = 0; tau < 10; tau += 1) {
      LpeConfig lo, hi;
      lo.tau_pairs = tau;
      hi.tau_pairs = tau + 1;
      ASSERT_TRUE(entails_lpe(t, h, kb, lo).entailed || !entails_lpe(t, h, kb, hi).entailed);
    }
  }
}

}  // namespace
}  // namespace entail
