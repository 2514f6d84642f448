#include "entail/entailment.hpp"

#include <algorithm>

namespace entail {

std::string_view to_string(Method m) { return m == Method::Mrm ? "mrm" : "lpe"; }

std::string render(const LpeEvidence& e) {
  std::string out = "pair " + e.source + " -> " + e.target + ": ";
  if (e.path) return out + render(*e.path);
  return out + (e.shared ? e.shared->value : std::string("?")) + " (aggregate=synonym)";
}

Verdict entails_mrm(std::span<const LogicalForm> text, const LogicalForm& hypothesis,
                    const LexKB& kb, const ProveConfig& cfg) {
  const ClausalForm cf = clausify(text, hypothesis, cfg.text_terms);
  const auto clauses = cf.all();
  RefuteResult result = refute(clauses, kb, cfg);

  Verdict v;
  v.method = Method::Mrm;
  v.threshold = cfg.tau_total;
  if (result.outcome == RefuteOutcome::Proved) {
    v.score = result.derivation->total_score;
    v.entailed = v.score > cfg.tau_total;
    v.reason = v.entailed ? "proved" : "below-threshold";
    v.derivation = std::move(result.derivation);
  } else {
    v.reason = std::string(to_string(result.outcome));
  }
  return v;
}

namespace {

std::vector<std::string> unique_lower(std::span<const std::string> words) {
  std::vector<std::string> out;
  for (const auto& w : words) {
    std::string lw = to_lower(w);
    if (std::find(out.begin(), out.end(), lw) == out.end()) out.push_back(std::move(lw));
  }
  return out;
}

std::optional<SynsetId> shared_synset(const LexKB& kb, const std::string& a, const std::string& b) {
  const auto left = kb.synsets_of(a);
  const auto right = kb.synsets_of(b);
  for (const auto& id : left) {
    if (std::binary_search(right.begin(), right.end(), id)) return id;
  }
  return std::nullopt;
}

}  // namespace

Verdict entails_lpe(std::span<const std::string> text_words,
                    std::span<const std::string> hypothesis_words, const LexKB& kb,
                    const LpeConfig& cfg) {
  Verdict v;
  v.method = Method::Lpe;
  v.threshold = cfg.tau_pairs;
  const auto ts = unique_lower(text_words);
  const auto hs = unique_lower(hypothesis_words);
  for (const auto& w1 : ts) {
    for (const auto& w2 : hs) {
      LpeEvidence e{w1, w2, std::nullopt, std::nullopt, {}};
      if (cfg.count_synonyms) e.shared = shared_synset(kb, w1, w2);
      if (!e.shared) {
        e.path = find_lpe(kb, w1, w2, cfg.max_len);
        if (!e.path) continue;
      }
      if (cfg.all_witnesses) e.alternatives = find_all_lpe(kb, w1, w2, cfg.max_len);
      v.pairs.push_back(std::move(e));
    }
  }
  v.score = static_cast<double>(v.pairs.size());
  v.entailed = v.score > cfg.tau_pairs;
  v.reason = v.pairs.empty() ? "no-paths" : "paths";
  return v;
}

}  // namespace entail
