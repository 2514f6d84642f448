#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entail/lexkb.hpp"
#include "entail/logicform.hpp"
#include "entail/lpe.hpp"
#include "entail/resolution.hpp"

namespace entail {

enum class Method { Mrm, Lpe };

std::string_view to_string(Method m);

struct LpeConfig {
  double tau_pairs = 0.0;
  int max_len = 6;
  bool count_synonyms = true;  // words sharing a synset count as a pair
  bool all_witnesses = false;
};

/// A (T-word, H-word) pair linked by a lexical path. `path` is absent when
/// the two words share the synset `shared`.
struct LpeEvidence {
  std::string source;
  std::string target;
  std::optional<LpePath> path;
  std::optional<SynsetId> shared;
  std::vector<LpePath> alternatives;  // filled when all_witnesses is set
};

/// "pair <w1> -> <w2>: <path>" (or "<synset> (aggregate=synonym)").
std::string render(const LpeEvidence& e);

struct Verdict {
  bool entailed = false;
  Method method = Method::Mrm;
  double score = 0.0;      // MRM: derivation score; LPE: pair count
  double threshold = 0.0;  // tau_total or tau_pairs
  std::string reason;      // proved | below-threshold | saturated | budget | paths | no-paths
  std::optional<Derivation> derivation;
  std::vector<LpeEvidence> pairs;
};

/// Clausifies T and neg(H), refutes, and accepts when a refutation exists
/// whose score exceeds tau_total.
Verdict entails_mrm(std::span<const LogicalForm> text, const LogicalForm& hypothesis,
                    const LexKB& kb, const ProveConfig& cfg);

/// Counts distinct (w1, w2) in T x H joined by a lexical path and accepts
/// when the count exceeds tau_pairs.
Verdict entails_lpe(std::span<const std::string> text_words,
                    std::span<const std::string> hypothesis_words, const LexKB& kb,
                    const LpeConfig& cfg);

}  // namespace entail
