#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entail/lexkb.hpp"
#include "entail/logicform.hpp"
#include "entail/unification.hpp"

namespace entail {

struct ResolutionStep {
  std::size_t left = 0;  // clause ids of the parents
  std::size_t right = 0;
  Literal left_literal;
  Literal right_literal;
  Substitution sigma;
  Clause resolvent;
  std::size_t resolvent_id = 0;
  double score = 0.0;
};

struct Derivation {
  std::vector<ResolutionStep> steps;  // ordered by resolvent id
  double total_score = 0.0;
  Clause final;
};

struct ProveConfig {
  UnifyConfig unify;
  double tau_total = 0.0;
  std::size_t max_steps = 10000;
  std::size_t max_clause_size = 32;
  TextTerms text_terms = TextTerms::Keep;
};

enum class RefuteOutcome { Proved, Saturated, Budget };

std::string_view to_string(RefuteOutcome outcome);

struct RefuteResult {
  RefuteOutcome outcome = RefuteOutcome::Saturated;
  std::optional<Derivation> derivation;
  std::size_t generated = 0;
};

/// All lexical resolvents of two clauses that share no variables: one step
/// per complementary literal pair whose atoms lexically unify. The
/// resolvent is sigma applied to the remaining literals of both parents.
/// Parent ids in the returned steps are left at 0.
std::vector<ResolutionStep> resolve_step(const Clause& c1, const Clause& c2, const LexKB& kb,
                                         const UnifyConfig& cfg);

/// Best-first set-of-support refutation. The support set is the last clause
/// plus every clause with a negative literal, so the unsupported remainder
/// is all-positive and hence satisfiable. The clause with the highest
/// accumulated derivation score is expanded next (ties: lowest id). The
/// resolvents of one given clause are kept best score first, and the first
/// empty resolvent ends the search. Tautologies, clauses above
/// max_clause_size, and variants of kept clauses are discarded; max_steps
/// caps the number of kept resolvents.
RefuteResult refute(std::span<const Clause> clauses, const LexKB& kb, const ProveConfig& cfg);

/// One line per step:
///   step <n>: <id1> x <id2> on <lit1>~<lit2> sim-score=<W> -> <resolvent>
std::string render_trace(const Derivation& d);

}  // namespace entail
