#include "entail/resolution.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "entail/text.hpp"

namespace entail {

std::string_view to_string(RefuteOutcome outcome) {
  switch (outcome) {
    case RefuteOutcome::Proved: return "proved";
    case RefuteOutcome::Saturated: return "saturated";
    case RefuteOutcome::Budget: return "budget";
  }
  return "?";
}

std::vector<ResolutionStep> resolve_step(const Clause& c1, const Clause& c2, const LexKB& kb,
                                         const UnifyConfig& cfg) {
  std::vector<ResolutionStep> steps;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    for (std::size_t j = 0; j < c2.size(); ++j) {
      if (c1[i].negated == c2[j].negated) continue;
      auto outcome = unify_atoms(c1[i].atom, c2[j].atom, kb, cfg);
      if (!outcome) continue;
      Clause resolvent;
      for (std::size_t k = 0; k < c1.size(); ++k)
        if (k != i) resolvent.add(outcome->sigma.apply(c1[k]));
      for (std::size_t k = 0; k < c2.size(); ++k)
        if (k != j) resolvent.add(outcome->sigma.apply(c2[k]));
      ResolutionStep step;
      step.left_literal = c1[i];
      step.right_literal = c2[j];
      step.sigma = std::move(outcome->sigma);
      step.resolvent = std::move(resolvent);
      step.score = outcome->score;
      steps.push_back(std::move(step));
    }
  }
  return steps;
}

namespace {

void collect_variables(const Clause& c, std::set<std::string>& out) {
  for (const auto& lit : c)
    for (const auto& t : lit.atom.args)
      if (t.is_variable()) out.insert(t.name);
}

// Renames the variables of `c` that also occur in `avoid` by priming them.
Clause standardize_apart(const Clause& c, const std::set<std::string>& avoid) {
  std::set<std::string> own;
  collect_variables(c, own);
  Substitution renaming;
  for (const auto& var : own) {
    if (!avoid.count(var)) continue;
    std::string fresh = var + "'";
    while (avoid.count(fresh) || own.count(fresh)) fresh += "'";
    renaming.bind(var, Term::variable(fresh));
  }
  return renaming.empty() ? c : renaming.apply(c);
}

// Variables are numbered by first occurrence after ordering literals on a
// variable-blind key, so equal keys imply the clauses are variants.
std::string variant_key(const Clause& c) {
  std::vector<const Literal*> lits;
  for (const auto& lit : c) lits.push_back(&lit);
  const auto blind = [](const Literal& l) {
    std::string key = (l.negated ? "-" : "+") + l.atom.predicate + "(";
    for (const auto& t : l.atom.args) {
      key += t.is_variable() ? std::string("?") : (t.kind == TermKind::SkolemConst ? "$" : "'") + t.name;
      key += ',';
    }
    return key + ")";
  };
  std::stable_sort(lits.begin(), lits.end(),
                   [&](const Literal* a, const Literal* b) { return blind(*a) < blind(*b); });
  std::map<std::string, int> numbering;
  std::string key;
  for (const Literal* lit : lits) {
    key += (lit->negated ? "-" : "+") + lit->atom.predicate + "(";
    for (const auto& t : lit->atom.args) {
      if (t.is_variable()) {
        const auto [it, fresh] = numbering.emplace(t.name, static_cast<int>(numbering.size()));
        key += "?" + std::to_string(it->second);
      } else {
        key += (t.kind == TermKind::SkolemConst ? "$" : "'") + t.name;
      }
      key += ',';
    }
    key += ")|";
  }
  return key;
}

struct Node {
  Clause clause;
  std::optional<ResolutionStep> step;
  std::vector<std::size_t> ancestry;  // derived clauses in this proof, sorted
  double score = 0.0;
};

class Search {
 public:
  Search(const LexKB& kb, const ProveConfig& cfg) : kb_(kb), cfg_(cfg) {}

  RefuteResult run(std::span<const Clause> inputs) {
    RefuteResult result;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const bool support = i + 1 == inputs.size() ||
                           std::any_of(inputs[i].begin(), inputs[i].end(),
                                       [](const Literal& l) { return l.negated; });
      const std::size_t id = add(Node{inputs[i], std::nullopt, {}, 0.0});
      if (inputs[i].empty()) return proved(id, result);
      if (support) {
        queue_.push(id);
      } else {
        processed_.push_back(id);
      }
    }

    while (!queue_.empty()) {
      const std::size_t given = queue_.top();
      queue_.pop();
      processed_.push_back(given);
      std::set<std::string> given_vars;
      collect_variables(nodes_[given].clause, given_vars);

      // All resolvents of the given clause are ranked before any is kept, so
      // that of two variants the higher-scoring derivation survives.
      std::vector<std::pair<double, ResolutionStep>> candidates;
      for (const std::size_t other : processed_) {
        const Clause partner = standardize_apart(nodes_[other].clause, given_vars);
        for (auto& step : resolve_step(nodes_[given].clause, partner, kb_, cfg_.unify)) {
          if (step.resolvent.is_tautology() || step.resolvent.size() > cfg_.max_clause_size) continue;
          step.left = given;
          step.right = other;
          const double score = accumulated(step);
          candidates.emplace_back(score, std::move(step));
        }
      }
      std::stable_sort(candidates.begin(), candidates.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (auto& [score, step] : candidates) {
        if (!seen_.insert(variant_key(step.resolvent)).second) continue;
        const std::size_t id = derive(std::move(step));
        ++result.generated;
        if (nodes_[id].clause.empty()) return proved(id, result);
        queue_.push(id);
        if (result.generated >= cfg_.max_steps) {
          result.outcome = RefuteOutcome::Budget;
          return result;
        }
      }
    }
    result.outcome = RefuteOutcome::Saturated;
    return result;
  }

 private:
  struct Priority {
    const std::vector<Node>* nodes;
    bool operator()(std::size_t a, std::size_t b) const {
      const double sa = (*nodes)[a].score;
      const double sb = (*nodes)[b].score;
      if (sa != sb) return sa < sb;
      return a > b;
    }
  };

  std::size_t add(Node node) {
    seen_.insert(variant_key(node.clause));
    nodes_.push_back(std::move(node));
    return nodes_.size() - 1;
  }

  std::vector<std::size_t> parent_ancestry(const ResolutionStep& step) const {
    std::vector<std::size_t> ancestry;
    const auto& a = nodes_[step.left].ancestry;
    const auto& b = nodes_[step.right].ancestry;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ancestry));
    return ancestry;
  }

  // Score of the derivation the step would close: its own score plus every
  // distinct earlier step it depends on.
  double accumulated(const ResolutionStep& step) const {
    double score = step.score;
    for (std::size_t k : parent_ancestry(step)) score += nodes_[k].step->score;
    return score;
  }

  std::size_t derive(ResolutionStep step) {
    const std::size_t id = nodes_.size();
    step.resolvent_id = id;
    const double score = accumulated(step);
    std::vector<std::size_t> ancestry = parent_ancestry(step);
    ancestry.push_back(id);
    Clause clause = step.resolvent;
    nodes_.push_back(Node{std::move(clause), std::move(step), std::move(ancestry), score});
    return id;
  }

  RefuteResult& proved(std::size_t id, RefuteResult& result) {
    Derivation d;
    for (std::size_t k : nodes_[id].ancestry) {
      d.steps.push_back(*nodes_[k].step);
      d.total_score += nodes_[k].step->score;
    }
    d.final = nodes_[id].clause;
    result.outcome = RefuteOutcome::Proved;
    result.derivation = std::move(d);
    return result;
  }

  const LexKB& kb_;
  const ProveConfig& cfg_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> processed_;
  std::unordered_set<std::string> seen_;
  std::priority_queue<std::size_t, std::vector<std::size_t>, Priority> queue_{Priority{&nodes_}};
};

}  // namespace

RefuteResult refute(std::span<const Clause> clauses, const LexKB& kb, const ProveConfig& cfg) {
  return Search(kb, cfg).run(clauses);
}

std::string render_trace(const Derivation& d) {
  std::string out;
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const auto& s = d.steps[n];
    out += "step " + std::to_string(n + 1) + ": " + std::to_string(s.left) + " x " +
           std::to_string(s.right) + " on " + render(s.left_literal) + "~" +
           render(s.right_literal) + " sim-score=" + format_number(s.score) + " -> " +
           render(s.resolvent) + "\n";
  }
  return out;
}

}  // namespace entail
