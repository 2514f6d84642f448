#include "entail/lpe.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace entail {

SemRelation compose_relations(SemRelation first, SemRelation second) {
  return std::max(first, second);
}

bool matches_lpe_pattern(std::span<const SemRelation> relations) {
  // Branch 1: isa* entail*.
  bool in_entail = false;
  bool branch1 = true;
  for (SemRelation r : relations) {
    if (r == SemRelation::CauseTo || (in_entail && r == SemRelation::IsA)) {
      branch1 = false;
      break;
    }
    if (r == SemRelation::Entail) in_entail = true;
  }
  if (branch1) return true;
  // Branch 2: (isa* cause*)* which is (isa|cause)*.
  return std::none_of(relations.begin(), relations.end(),
                      [](SemRelation r) { return r == SemRelation::Entail; });
}

namespace {

bool has_lemma(const Synset& s, const std::string& word) {
  return std::find(s.lemmas.begin(), s.lemmas.end(), word) != s.lemmas.end();
}

}  // namespace

std::optional<LpePath> find_lpe(const LexKB& kb, std::string_view w1, std::string_view w2,
                                int max_len) {
  const std::string source = to_lower(w1);
  const std::string target = to_lower(w2);
  if (max_len < 1 || !kb.knows(source) || !kb.knows(target)) return std::nullopt;

  struct State {
    SynsetId synset;
    SemRelation aggregate;
    int length;
    int parent;  // index into states, -1 for sources
    SemRelation via;
  };
  std::vector<State> states;
  std::set<std::pair<std::string, SemRelation>> visited;
  std::set<std::string> sources;
  std::deque<int> queue;
  for (const auto& id : kb.synsets_of(source)) {
    sources.insert(id.value);
    states.push_back(State{id, SemRelation::IsA, 0, -1, SemRelation::IsA});
    queue.push_back(static_cast<int>(states.size()) - 1);
  }

  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (states[cur].length >= max_len) continue;
    for (const auto& edge : kb.out_edges(states[cur].synset)) {
      const SemRelation agg = states[cur].length == 0
                                  ? edge.rel
                                  : compose_relations(states[cur].aggregate, edge.rel);
      if (!visited.emplace(edge.to.value, agg).second) continue;
      states.push_back(State{edge.to, agg, states[cur].length + 1, cur, edge.rel});
      const int next = static_cast<int>(states.size()) - 1;
      if (has_lemma(kb.synset(edge.to), target)) {
        LpePath path;
        path.aggregate = agg;
        path.source_word = source;
        path.target_word = target;
        for (int k = next; k >= 0; k = states[k].parent) {
          path.synsets.push_back(states[k].synset);
          if (states[k].parent >= 0) path.relations.push_back(states[k].via);
        }
        std::reverse(path.synsets.begin(), path.synsets.end());
        std::reverse(path.relations.begin(), path.relations.end());
        return path;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::vector<LpePath> find_all_lpe(const LexKB& kb, std::string_view w1, std::string_view w2,
                                  int max_len) {
  const std::string source = to_lower(w1);
  const std::string target = to_lower(w2);
  std::vector<LpePath> found;
  if (max_len < 1) return found;

  LpePath current;
  current.source_word = source;
  current.target_word = target;
  const auto walk = [&](auto&& self) -> void {
    if (current.length() >= static_cast<std::size_t>(max_len)) return;
    for (const auto& edge : kb.out_edges(current.synsets.back())) {
      const SemRelation saved = current.aggregate;
      current.aggregate = current.relations.empty() ? edge.rel
                                                    : compose_relations(current.aggregate, edge.rel);
      current.synsets.push_back(edge.to);
      current.relations.push_back(edge.rel);
      if (has_lemma(kb.synset(edge.to), target)) found.push_back(current);
      self(self);
      current.synsets.pop_back();
      current.relations.pop_back();
      current.aggregate = saved;
    }
  };
  for (const auto& id : kb.synsets_of(source)) {
    current.synsets = {id};
    current.relations.clear();
    walk(walk);
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const LpePath& a, const LpePath& b) { return a.length() < b.length(); });
  return found;
}

std::vector<std::string> content_words(std::span<const AnnotatedToken> tokens) {
  std::vector<std::string> words;
  for (const auto& tok : tokens) {
    if (is_open_class(tok.pos)) words.push_back(to_lower(tok.lemma));
  }
  return words;
}

std::vector<std::string> content_words(const LogicalForm& form) {
  std::vector<std::string> words;
  for (const auto& atom : form.atoms) {
    if (std::find(words.begin(), words.end(), atom.predicate) == words.end()) {
      words.push_back(atom.predicate);
    }
  }
  return words;
}

std::string render(const LpePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.synsets.size(); ++i) {
    if (i) out += std::string(" -[") + std::string(to_string(path.relations[i - 1])) + "]-> ";
    out += path.synsets[i].value;
  }
  return out + " (aggregate=" + std::string(to_string(path.aggregate)) + ")";
}

}  // namespace entail
