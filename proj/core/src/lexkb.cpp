#include "entail/lexkb.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <tuple>

#include "entail/errors.hpp"

namespace entail {

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "n";
    case Pos::Verb: return "v";
    case Pos::Adj: return "a";
    case Pos::Adv: return "r";
  }
  return "?";
}

std::string_view to_string(SemRelation rel) {
  switch (rel) {
    case SemRelation::IsA: return "isa";
    case SemRelation::CauseTo: return "cause";
    case SemRelation::Entail: return "entail";
  }
  return "?";
}

std::string_view to_string(SimMeasure m) {
  switch (m) {
    case SimMeasure::Path: return "path";
    case SimMeasure::Wup: return "wup";
    case SimMeasure::Lch: return "lch";
  }
  return "?";
}

std::optional<Pos> parse_pos(std::string_view text) {
  const std::string t = to_lower(text);
  if (t == "n" || t == "noun") return Pos::Noun;
  if (t == "v" || t == "verb") return Pos::Verb;
  if (t == "a" || t == "adj") return Pos::Adj;
  if (t == "r" || t == "adv") return Pos::Adv;
  return std::nullopt;
}

std::optional<SemRelation> parse_relation(std::string_view text) {
  const std::string t = to_lower(text);
  if (t == "isa" || t == "is-a" || t == "is_a") return SemRelation::IsA;
  if (t == "entail") return SemRelation::Entail;
  if (t == "cause" || t == "cause-to" || t == "cause_to") return SemRelation::CauseTo;
  return std::nullopt;
}

std::optional<SimMeasure> parse_measure(std::string_view text) {
  const std::string t = to_lower(text);
  if (t == "path") return SimMeasure::Path;
  if (t == "wup") return SimMeasure::Wup;
  if (t == "lch") return SimMeasure::Lch;
  return std::nullopt;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  for (std::string f; in >> f;) fields.push_back(std::move(f));
  return fields;
}

std::vector<std::string> split_lemmas(const std::string& field, std::size_t line_no) {
  std::vector<std::string> lemmas;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = field.find(',', start);
    std::string lemma = to_lower(field.substr(start, comma - start));
    if (lemma.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty lemma", line_no);
    }
    if (std::find(lemmas.begin(), lemmas.end(), lemma) == lemmas.end()) {
      lemmas.push_back(std::move(lemma));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return lemmas;
}

int pos_slot(Pos pos) { return static_cast<int>(pos); }

}  // namespace

LexKB LexKB::load(std::istream& in) {
  LexKB kb;
  struct PendingEdge {
    std::string from;
    SemRelation rel;
    std::string to;
    std::size_t line;
  };
  std::vector<PendingEdge> pending;

  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    const auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    if (fields[0] == "s") {
      if (fields.size() != 4) throw fail("synset record needs 4 fields");
      const auto pos = parse_pos(fields[2]);
      if (!pos || fields[2].size() != 1) throw fail("bad part of speech '" + fields[2] + "'");
      if (kb.by_id_.count(fields[1])) throw fail("duplicate synset id '" + fields[1] + "'");
      kb.by_id_.emplace(fields[1], static_cast<int>(kb.synsets_.size()));
      kb.synsets_.push_back(Synset{SynsetId{fields[1]}, *pos, split_lemmas(fields[3], line_no)});
    } else if (fields[0] == "r") {
      if (fields.size() != 4) throw fail("relation record needs 4 fields");
      const auto rel = parse_relation(fields[1]);
      if (!rel) throw fail("unknown relation '" + fields[1] + "'");
      pending.push_back({fields[2], *rel, fields[3], line_no});
    } else {
      throw fail("unknown record type '" + fields[0] + "'");
    }
  }

  const std::size_t n = kb.synsets_.size();
  kb.out_.resize(n);
  kb.isa_up_.resize(n);
  kb.isa_down_.resize(n);

  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : pending) {
    const auto from = kb.by_id_.find(e.from);
    const auto to = kb.by_id_.find(e.to);
    if (from == kb.by_id_.end() || to == kb.by_id_.end()) {
      throw ValidationError("line " + std::to_string(e.line) + ": edge endpoint '" +
                            (from == kb.by_id_.end() ? e.from : e.to) + "' is not a synset");
    }
    const int a = from->second;
    const int b = to->second;
    const Pos pa = kb.synsets_[a].pos;
    const Pos pb = kb.synsets_[b].pos;
    if (e.rel == SemRelation::IsA && pa != pb) {
      throw ValidationError("line " + std::to_string(e.line) +
                            ": isa edge joins synsets of different parts of speech");
    }
    if (e.rel != SemRelation::IsA && (pa != Pos::Verb || pb != Pos::Verb)) {
      throw ValidationError("line " + std::to_string(e.line) + ": " +
                            std::string(to_string(e.rel)) + " edges connect verbs only");
    }
    if (!seen.emplace(a, static_cast<int>(e.rel), b).second) continue;
    kb.edges_.push_back(Edge{SynsetId{e.from}, e.rel, SynsetId{e.to}});
    kb.out_[a].push_back(Arc{e.rel, b});
    if (e.rel == SemRelation::IsA) {
      kb.isa_up_[a].push_back(b);
      kb.isa_down_[b].push_back(a);
    }
  }

  // Kahn's algorithm over every edge; leftover nodes lie on a cycle.
  std::vector<int> indegree(n, 0);
  for (const auto& arcs : kb.out_)
    for (const auto& arc : arcs) ++indegree[arc.to];
  std::deque<int> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
  std::size_t visited = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    ++visited;
    for (const auto& arc : kb.out_[v])
      if (--indegree[arc.to] == 0) ready.push_back(arc.to);
  }
  if (visited != n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] > 0) {
        throw ValidationError("relation cycle through synset '" + kb.synsets_[i].id.value + "'");
      }
    }
  }

  kb.depth_.assign(n, 0);
  std::deque<int> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    if (kb.isa_up_[i].empty()) {
      kb.depth_[i] = 1;
      frontier.push_back(static_cast<int>(i));
    }
  }
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop_front();
    for (int child : kb.isa_down_[v]) {
      if (kb.depth_[child] == 0) {
        kb.depth_[child] = kb.depth_[v] + 1;
        frontier.push_back(child);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    int& slot = kb.max_depth_[pos_slot(kb.synsets_[i].pos)];
    slot = std::max(slot, kb.depth_[i]);
    for (const auto& lemma : kb.synsets_[i].lemmas) kb.by_lemma_[lemma].push_back(static_cast<int>(i));
  }
  return kb;
}

LexKB LexKB::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knowledge base '" + path.string() + "'");
  return load(in);
}

bool LexKB::contains(const SynsetId& id) const { return by_id_.count(id.value) != 0; }

int LexKB::index_of(const SynsetId& id) const {
  const auto it = by_id_.find(id.value);
  if (it == by_id_.end()) throw LookupError("unknown synset '" + id.value + "'");
  return it->second;
}

const Synset& LexKB::synset(const SynsetId& id) const { return synsets_[index_of(id)]; }

std::vector<Edge> LexKB::out_edges(const SynsetId& id) const {
  std::vector<Edge> result;
  for (const auto& arc : out_[index_of(id)]) {
    result.push_back(Edge{id, arc.rel, synsets_[arc.to].id});
  }
  return result;
}

std::vector<SynsetId> LexKB::synsets_of(std::string_view lemma, std::optional<Pos> pos) const {
  std::vector<SynsetId> result;
  const auto it = by_lemma_.find(to_lower(lemma));
  if (it == by_lemma_.end()) return result;
  for (int i : it->second) {
    if (!pos || synsets_[i].pos == *pos) result.push_back(synsets_[i].id);
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool LexKB::knows(std::string_view lemma) const { return by_lemma_.count(to_lower(lemma)) != 0; }

std::optional<int> LexKB::isa_distance(int a, int b) const {
  if (synsets_[a].pos != synsets_[b].pos) return std::nullopt;
  if (a == b) return 0;
  std::vector<int> dist(synsets_.size(), -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto* next : {&isa_up_[v], &isa_down_[v]}) {
      for (int w : *next) {
        if (dist[w] >= 0) continue;
        dist[w] = dist[v] + 1;
        if (w == b) return dist[w];
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

std::optional<int> LexKB::isa_path_length(const SynsetId& a, const SynsetId& b) const {
  return isa_distance(index_of(a), index_of(b));
}

// Fewest IS_A hops upward from `from` to `ancestor`, which must subsume it.
int LexKB::up_distance(int from, int ancestor) const {
  std::vector<int> dist(synsets_.size(), -1);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == ancestor) return dist[v];
    for (int up : isa_up_[v]) {
      if (dist[up] < 0) {
        dist[up] = dist[v] + 1;
        queue.push_back(up);
      }
    }
  }
  return 0;
}

int LexKB::depth(const SynsetId& id) const { return depth_[index_of(id)]; }

int LexKB::max_depth(Pos pos) const { return max_depth_[pos_slot(pos)]; }

std::optional<SynsetId> LexKB::lowest_common_subsumer(const SynsetId& a,
                                                      const SynsetId& b) const {
  const auto ancestors = [this](int start) {
    std::vector<char> mark(synsets_.size(), 0);
    std::vector<int> stack{start};
    mark[start] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int up : isa_up_[v]) {
        if (!mark[up]) {
          mark[up] = 1;
          stack.push_back(up);
        }
      }
    }
    return mark;
  };
  const auto left = ancestors(index_of(a));
  const auto right = ancestors(index_of(b));
  std::optional<int> best;
  for (std::size_t i = 0; i < synsets_.size(); ++i) {
    if (!left[i] || !right[i]) continue;
    const int idx = static_cast<int>(i);
    if (!best || depth_[idx] > depth_[*best] ||
        (depth_[idx] == depth_[*best] && synsets_[idx].id < synsets_[*best].id)) {
      best = idx;
    }
  }
  if (!best) return std::nullopt;
  return synsets_[*best].id;
}

double LexKB::similarity_at(int a, int b, SimMeasure measure) const {
  const Pos pos = synsets_[a].pos;
  if (pos != synsets_[b].pos) return 0.0;
  if (a == b) return 1.0;
  switch (measure) {
    case SimMeasure::Path: {
      const auto len = isa_distance(a, b);
      return len ? 1.0 / (1.0 + *len) : 0.0;
    }
    case SimMeasure::Wup: {
      const auto lcs = lowest_common_subsumer(synsets_[a].id, synsets_[b].id);
      if (!lcs) return 0.0;
      // Depths are measured through the subsumer so that a synset with a
      // shallower second parent cannot push the ratio above 1.
      const int l = index_of(*lcs);
      const int dl = depth_[l];
      return 2.0 * dl / static_cast<double>(2 * dl + up_distance(a, l) + up_distance(b, l));
    }
    case SimMeasure::Lch: {
      const auto len = isa_distance(a, b);
      if (!len) return 0.0;
      const double span = 2.0 * max_depth(pos);
      const double score = std::log(span / (*len + 1.0)) / std::log(span);
      return std::clamp(score, 0.0, 1.0);
    }
  }
  return 0.0;
}

double LexKB::synset_similarity(const SynsetId& a, const SynsetId& b, SimMeasure measure) const {
  return similarity_at(index_of(a), index_of(b), measure);
}

double LexKB::similarity(std::string_view w1, std::string_view w2, SimMeasure measure,
                         std::optional<Pos> pos) const {
  const auto left = by_lemma_.find(to_lower(w1));
  const auto right = by_lemma_.find(to_lower(w2));
  if (left == by_lemma_.end() || right == by_lemma_.end()) return 0.0;
  double best = 0.0;
  for (int a : left->second) {
    if (pos && synsets_[a].pos != *pos) continue;
    for (int b : right->second) {
      if (pos && synsets_[b].pos != *pos) continue;
      best = std::max(best, similarity_at(a, b, measure));
      if (best >= 1.0) return 1.0;
    }
  }
  return best;
}

}  // namespace entail
