#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "entail/lexkb.hpp"
#include "entail/logicform.hpp"

namespace entail {

/// Idempotent variable bindings: no bound variable occurs in any value.
class Substitution {
 public:
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  const Term* lookup(const std::string& var) const;

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  Literal apply(const Literal& l) const;
  Clause apply(const Clause& c) const;

  /// Adds var -> value, rewriting existing values so the map stays
  /// idempotent. Binding a variable to itself is a no-op. Returns false if
  /// `var` is already bound.
  bool bind(const std::string& var, const Term& value);

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> bindings_;
};

std::string render(const Substitution& s);  // "{h_x2->sk1, ...}"

struct UnifyConfig {
  double tau_step = 0.2;  // per-comparison threshold
  double tau_atom = 0.0;  // atom-level score threshold
  SimMeasure measure = SimMeasure::Path;
};

struct UnifyOutcome {
  Substitution sigma;
  double score = 0.0;
};

struct TermMatch {
  std::optional<std::pair<std::string, Term>> binding;
  double score = 0.0;
};

/// Unifies two argument terms. FOPC cases (equal constants, a variable on
/// either side) score 1; two distinct word constants score their lexical
/// similarity, leaving the threshold test to the caller. Skolem constants
/// only unify with themselves or with variables.
std::optional<TermMatch> unify_terms(const Term& t1, const Term& t2, const LexKB& kb,
                                     SimMeasure measure);

/// Lexical unification of two atoms.
///
/// The predicate names must be equal or have similarity >= tau_step. Every
/// argument of the smaller-arity atom is then matched to a distinct argument
/// of the other; each matched pair must unify, distinct word constants need
/// a similarity > tau_step, and all bindings must compose. Among the admissible assignments the one with
/// the highest total score wins, ties going to the lexicographically
/// smallest assignment. Surplus arguments of the larger atom are ignored.
/// Succeeds when predicate score plus argument scores exceeds tau_atom.
std::optional<UnifyOutcome> unify_atoms(const Atom& a1, const Atom& a2, const LexKB& kb,
                                        const UnifyConfig& cfg);

inline Clause apply_substitution(const Substitution& sigma, const Clause& c) {
  return sigma.apply(c);
}

}  // namespace entail
