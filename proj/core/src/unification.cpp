#include "entail/unification.hpp"

#include <vector>

namespace entail {

const Term* Substitution::lookup(const std::string& var) const {
  const auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (!t.is_variable()) return t;
  const Term* bound = lookup(t.name);
  return bound ? *bound : t;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(t));
  return out;
}

Literal Substitution::apply(const Literal& l) const { return Literal{apply(l.atom), l.negated}; }

Clause Substitution::apply(const Clause& c) const {
  Clause out;
  for (const auto& lit : c) out.add(apply(lit));
  return out;
}

bool Substitution::bind(const std::string& var, const Term& value) {
  const Term resolved = apply(value);
  if (resolved.is_variable() && resolved.name == var) return true;
  if (bindings_.count(var)) return false;
  for (auto& [key, bound] : bindings_) {
    if (bound.is_variable() && bound.name == var) bound = resolved;
  }
  bindings_.emplace(var, resolved);
  return true;
}

std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += var + "->" + render(value);
  }
  return out + "}";
}

std::optional<TermMatch> unify_terms(const Term& t1, const Term& t2, const LexKB& kb,
                                     SimMeasure measure) {
  if (t1.is_variable()) {
    if (t2.is_variable() && t2.name == t1.name) return TermMatch{std::nullopt, 1.0};
    return TermMatch{std::make_pair(t1.name, t2), 1.0};
  }
  if (t2.is_variable()) return TermMatch{std::make_pair(t2.name, t1), 1.0};
  if (t1 == t2) return TermMatch{std::nullopt, 1.0};
  if (t1.kind == TermKind::WordConst && t2.kind == TermKind::WordConst) {
    return TermMatch{std::nullopt, kb.similarity(t1.name, t2.name, measure)};
  }
  return std::nullopt;
}

namespace {

constexpr double kScoreEpsilon = 1e-12;

struct AssignmentSearch {
  const std::vector<Term>& small;
  const std::vector<Term>& large;
  const LexKB& kb;
  const UnifyConfig& cfg;

  std::vector<char> used;
  std::optional<UnifyOutcome> best;

  void run(std::size_t i, const Substitution& sigma, double total) {
    if (i == small.size()) {
      if (!best || total > best->score + kScoreEpsilon) best = UnifyOutcome{sigma, total};
      return;
    }
    for (std::size_t j = 0; j < large.size(); ++j) {
      if (used[j]) continue;
      const Term a = sigma.apply(small[i]);
      const Term b = sigma.apply(large[j]);
      const auto match = unify_terms(a, b, kb, cfg.measure);
      if (!match) continue;
      const bool lexical = a.kind == TermKind::WordConst && b.kind == TermKind::WordConst && a != b;
      if (lexical && !(match->score > cfg.tau_step)) continue;
      Substitution next = sigma;
      if (match->binding && !next.bind(match->binding->first, match->binding->second)) continue;
      used[j] = 1;
      run(i + 1, next, total + match->score);
      used[j] = 0;
    }
  }
};

}  // namespace

std::optional<UnifyOutcome> unify_atoms(const Atom& a1, const Atom& a2, const LexKB& kb,
                                        const UnifyConfig& cfg) {
  const bool swap = a1.args.size() > a2.args.size();
  const Atom& small = swap ? a2 : a1;
  const Atom& large = swap ? a1 : a2;

  const double predicate_score =
      small.predicate == large.predicate ? 1.0
                                         : kb.similarity(small.predicate, large.predicate, cfg.measure);
  if (predicate_score < cfg.tau_step) return std::nullopt;

  AssignmentSearch search{small.args, large.args, kb, cfg, std::vector<char>(large.args.size(), 0), std::nullopt};
  search.run(0, Substitution{}, 0.0);
  if (!search.best) return std::nullopt;
  search.best->score += predicate_score;
  if (!(search.best->score > cfg.tau_atom)) return std::nullopt;
  return search.best;
}

}  // namespace entail
