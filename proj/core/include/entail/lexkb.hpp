#pragma once

#include <cstddef>
#include <compare>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entail {

enum class Pos { Noun, Verb, Adj, Adv };

// Declaration order is the strength order used when composing relations
// along a path: IsA < CauseTo < Entail.
enum class SemRelation { IsA, CauseTo, Entail };

enum class SimMeasure { Path, Wup, Lch };

std::string_view to_string(Pos pos);
std::string_view to_string(SemRelation rel);  // "isa" | "cause" | "entail"
std::string_view to_string(SimMeasure m);     // "path" | "wup" | "lch"

/// Accepts the KB file spellings ("n", "v", "a", "r") as well as
/// "noun"/"verb"/"adj"/"adv", case-insensitively.
std::optional<Pos> parse_pos(std::string_view text);
std::optional<SemRelation> parse_relation(std::string_view text);
std::optional<SimMeasure> parse_measure(std::string_view text);

struct SynsetId {
  std::string value;

  friend auto operator<=>(const SynsetId&, const SynsetId&) = default;
};

struct Synset {
  SynsetId id;
  Pos pos;
  std::vector<std::string> lemmas;  // lowercase, non-empty
};

struct Edge {
  SynsetId from;
  SemRelation rel;
  SynsetId to;
};

/// Immutable WordNet-style semantic graph. All queries are const and safe to
/// run concurrently once the KB has been loaded.
class LexKB {
 public:
  /// Parses the line format
  ///   s <id> <n|v|a|r> <lemma1,lemma2,...>
  ///   r <isa|entail|cause> <from-id> <to-id>
  /// with `#` comments and blank lines ignored. Throws ParseError (with the
  /// line number) on malformed lines and ValidationError on dangling edge
  /// endpoints, cycles, or ENTAIL/CAUSE edges touching non-verbs.
  static LexKB load(std::istream& in);
  static LexKB load_file(const std::filesystem::path& path);

  std::size_t synset_count() const { return synsets_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Synset> synsets() const { return synsets_; }
  std::span<const Edge> edges() const { return edges_; }

  bool contains(const SynsetId& id) const;
  const Synset& synset(const SynsetId& id) const;  // throws LookupError

  /// Outgoing edges of `id`, in file order.
  std::vector<Edge> out_edges(const SynsetId& id) const;

  /// Synsets whose lemma set contains `lemma` (case-insensitive), sorted by id.
  std::vector<SynsetId> synsets_of(std::string_view lemma,
                                   std::optional<Pos> pos = std::nullopt) const;
  bool knows(std::string_view lemma) const;

  /// Edge count of the shortest path in the undirected IS_A graph of the
  /// shared POS. Absent when the synsets are disconnected or differ in POS.
  std::optional<int> isa_path_length(const SynsetId& a, const SynsetId& b) const;

  /// Taxonomy depth: synsets without an IS_A parent sit at depth 1 below a
  /// virtual root at depth 0; otherwise 1 + the shallowest parent depth.
  int depth(const SynsetId& id) const;
  int max_depth(Pos pos) const;  // 0 when the POS has no synsets

  /// Deepest common IS_A ancestor (a synset counts as its own ancestor).
  /// Ties on depth resolve to the smallest id.
  std::optional<SynsetId> lowest_common_subsumer(const SynsetId& a,
                                                 const SynsetId& b) const;

  double synset_similarity(const SynsetId& a, const SynsetId& b,
                           SimMeasure measure) const;

  /// Best score over same-POS synset pairs of the two words; 0 when either
  /// word is unknown. Always within [0, 1].
  double similarity(std::string_view w1, std::string_view w2, SimMeasure measure,
                    std::optional<Pos> pos = std::nullopt) const;

 private:
  struct Arc {
    SemRelation rel;
    int to;
  };

  LexKB() = default;

  int index_of(const SynsetId& id) const;  // throws LookupError
  std::optional<int> isa_distance(int a, int b) const;
  int up_distance(int from, int ancestor) const;
  double similarity_at(int a, int b, SimMeasure measure) const;

  std::vector<Synset> synsets_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> by_id_;
  std::unordered_map<std::string, std::vector<int>> by_lemma_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<int>> isa_up_;
  std::vector<std::vector<int>> isa_down_;
  std::vector<int> depth_;
  int max_depth_[4] = {0, 0, 0, 0};
};

std::string to_lower(std::string_view text);

}  // namespace entail
