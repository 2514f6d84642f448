#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entail {

enum class TermKind { Variable, WordConst, SkolemConst };

struct Term {
  TermKind kind = TermKind::WordConst;
  std::string name;

  static Term variable(std::string name) { return {TermKind::Variable, std::move(name)}; }
  static Term word(std::string name) { return {TermKind::WordConst, std::move(name)}; }
  static Term skolem(std::string name) { return {TermKind::SkolemConst, std::move(name)}; }

  bool is_variable() const { return kind == TermKind::Variable; }

  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Classifies a bare identifier: `[xe][0-9]+` is a variable, `sk[0-9]+` a
/// Skolem constant, anything else a word constant.
Term classify_term(std::string_view ident);

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Literal {
  Atom atom;
  bool negated = false;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// A disjunction of literals with set semantics: duplicates are dropped on
/// insertion and equality ignores order. Insertion order is otherwise kept so
/// traces read in the order literals were written.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  bool add(Literal lit);
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }
  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }
  const std::vector<Literal>& literals() const { return literals_; }

  bool is_tautology() const;

  friend bool operator==(const Clause& a, const Clause& b);

 private:
  std::vector<Literal> literals_;
};

/// Implicitly existentially quantified conjunction of atoms.
struct LogicalForm {
  std::vector<Atom> atoms;

  friend bool operator==(const LogicalForm&, const LogicalForm&) = default;
};

std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Literal& l);  // negation rendered as "¬"
std::string render(const Clause& c);   // "[]" when empty, else " | "-joined
std::string render(const LogicalForm& f);

/// Parses `atom ('&' atom)*` with `atom := IDENT '(' term (',' term)* ')'`.
/// Identifiers are lowercased. Throws ParseError carrying the 0-based offset.
LogicalForm parse_logic_form(std::string_view text);

enum class TokenPos { Noun, Verb, Adj, Adv, Prep, Conj, Art, Other };
enum class Role { None, Subj, Dobj, Iobj };
enum class Transitivity { Intrans, Trans, Ditrans };

struct AnnotatedToken {
  int index = 0;
  std::string lemma;
  TokenPos pos = TokenPos::Other;
  Role role = Role::None;
  std::optional<int> head;
  std::optional<Transitivity> transitivity;
};

bool is_open_class(TokenPos pos);

/// Reads `index lemma pos role head transitivity` lines (tab separated,
/// `-` for absent fields). Blank lines separate sentences; `#` starts a
/// comment line.
std::vector<std::vector<AnnotatedToken>> parse_annotated(std::istream& in);
std::vector<AnnotatedToken> parse_annotated_sentence(std::string_view text);

/// One atom per noun, verb, adjective, adverb, preposition and conjunction.
/// Nouns get a fresh x-variable, verbs a fresh e-variable followed by
/// subject, direct object and indirect object slots as their transitivity
/// requires; every subject also yields `agent(x, e)`. Modifiers share the
/// variable of the token they modify. Throws DerivationError.
LogicalForm derive_logic_form(std::span<const AnnotatedToken> tokens);

enum class TextTerms {
  Skolemize,  // text variables become fresh Skolem constants
  Keep,       // text variables stay variables, scoped to their unit clause
};

struct ClausalForm {
  std::vector<Clause> text;
  Clause negated_hypothesis;

  /// Text clauses followed by the negated hypothesis.
  std::vector<Clause> all() const;
};

/// Every text atom becomes a positive unit clause. Hypothesis variables are
/// renamed with an `h_` prefix and the hypothesis turns into a single clause
/// of negated literals.
ClausalForm clausify(std::span<const LogicalForm> text_forms, const LogicalForm& hypothesis,
                     TextTerms mode = TextTerms::Skolemize);

}  // namespace entail
