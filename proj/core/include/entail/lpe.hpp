#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entail/lexkb.hpp"
#include "entail/logicform.hpp"

namespace entail {

/// Composition of consecutive relations along a path:
///   isa∘isa = isa; isa∘entail = entail∘isa = entail∘entail = entail;
///   isa∘cause = cause∘isa = cause∘cause = cause;
///   cause∘entail = entail∘cause = entail.
SemRelation compose_relations(SemRelation first, SemRelation second);

/// Oriented synset path c1 r1 c2 ... r(k-1) ck from a word of c1 to a word of ck.
struct LpePath {
  std::vector<SynsetId> synsets;
  std::vector<SemRelation> relations;
  SemRelation aggregate = SemRelation::IsA;
  std::string source_word;
  std::string target_word;

  std::size_t length() const { return relations.size(); }
};

/// Recognizes relation sequences of the shape (isa)*(entail)* or
/// (isa|cause)*. Composition admits strictly more sequences than this.
bool matches_lpe_pattern(std::span<const SemRelation> relations);

/// Shortest directed path (at least one edge, at most max_len) from any
/// synset of w1 to a synset containing w2. Ties resolve by source synset
/// id, then edge file order.
std::optional<LpePath> find_lpe(const LexKB& kb, std::string_view w1, std::string_view w2,
                                int max_len = 6);

/// Every directed path from w1 to w2 of at most max_len edges, shortest
/// first.
std::vector<LpePath> find_all_lpe(const LexKB& kb, std::string_view w1, std::string_view w2,
                                  int max_len = 6);

/// Lowercased lemmas of noun, verb, adjective and adverb tokens, in order.
std::vector<std::string> content_words(std::span<const AnnotatedToken> tokens);

/// Predicate names of a logical form, first occurrence order.
std::vector<std::string> content_words(const LogicalForm& form);

/// "<c1> -[isa]-> <c2> -[cause]-> <c3> (aggregate=cause)"
std::string render(const LpePath& path);

}  // namespace entail
