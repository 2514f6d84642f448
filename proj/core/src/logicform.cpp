#include "entail/logicform.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "entail/errors.hpp"
#include "entail/lexkb.hpp"

namespace entail {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'' ||
         c == '.';
}

}  // namespace

Term classify_term(std::string_view ident) {
  std::string name = to_lower(ident);
  if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'e') && all_digits(std::string_view(name).substr(1))) {
    return Term::variable(std::move(name));
  }
  if (name.size() >= 3 && name.starts_with("sk") && all_digits(std::string_view(name).substr(2))) {
    return Term::skolem(std::move(name));
  }
  return Term::word(std::move(name));
}

Clause::Clause(std::vector<Literal> literals) {
  for (auto& lit : literals) add(std::move(lit));
}

bool Clause::add(Literal lit) {
  if (std::find(literals_.begin(), literals_.end(), lit) != literals_.end()) return false;
  literals_.push_back(std::move(lit));
  return true;
}

bool Clause::is_tautology() const {
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    for (std::size_t j = i + 1; j < literals_.size(); ++j) {
      if (literals_[i].negated != literals_[j].negated && literals_[i].atom == literals_[j].atom) {
        return true;
      }
    }
  }
  return false;
}

bool operator==(const Clause& a, const Clause& b) {
  if (a.size() != b.size()) return false;
  auto x = a.literals_;
  auto y = b.literals_;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

std::string render(const Term& t) { return t.name; }

std::string render(const Atom& a) {
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += render(a.args[i]);
  }
  return out + ")";
}

std::string render(const Literal& l) { return (l.negated ? "¬" : "") + render(l.atom); }

std::string render(const Clause& c) {
  if (c.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    out += render(c[i]);
  }
  return out;
}

std::string render(const LogicalForm& f) {
  std::string out;
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    if (i) out += " & ";
    out += render(f.atoms[i]);
  }
  return out;
}

namespace {

class LfParser {
 public:
  explicit LfParser(std::string_view text) : text_(text) {}

  LogicalForm parse() {
    LogicalForm form;
    skip_ws();
    if (at_end()) throw error("empty logical form");
    form.atoms.push_back(atom());
    skip_ws();
    while (!at_end()) {
      if (text_[pos_] != '&') throw unexpected();
      ++pos_;
      skip_ws();
      if (at_end()) throw error("expected atom after '&'");
      form.atoms.push_back(atom());
      skip_ws();
    }
    return form;
  }

 private:
  Atom atom() {
    Atom a{to_lower(ident("predicate name")), {}};
    skip_ws();
    expect('(');
    do {
      skip_ws();
      a.args.push_back(classify_term(ident("term")));
      skip_ws();
    } while (consume(','));
    expect(')');
    return a;
  }

  std::string ident(const char* what) {
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) {
      if (at_end()) throw error(std::string("expected ") + what);
      throw unexpected();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    if (at_end()) throw error(std::string("expected '") + c + "'");
    if (text_[pos_] != c) throw unexpected();
    ++pos_;
  }

  bool consume(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  ParseError error(const std::string& msg) const {
    return ParseError(msg + " at offset " + std::to_string(pos_), pos_);
  }

  ParseError unexpected() const {
    return error(std::string("unexpected character '") + text_[pos_] + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LogicalForm parse_logic_form(std::string_view text) { return LfParser(text).parse(); }

bool is_open_class(TokenPos pos) {
  return pos == TokenPos::Noun || pos == TokenPos::Verb || pos == TokenPos::Adj ||
         pos == TokenPos::Adv;
}

namespace {

std::optional<TokenPos> parse_token_pos(const std::string& s) {
  static const std::map<std::string, TokenPos> names = {
      {"noun", TokenPos::Noun}, {"verb", TokenPos::Verb}, {"adj", TokenPos::Adj},
      {"adv", TokenPos::Adv},   {"prep", TokenPos::Prep}, {"conj", TokenPos::Conj},
      {"art", TokenPos::Art},   {"other", TokenPos::Other}};
  const auto it = names.find(to_lower(s));
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::optional<Role> parse_role(const std::string& s) {
  const std::string r = to_lower(s);
  if (r == "-" || r == "none") return Role::None;
  if (r == "subj") return Role::Subj;
  if (r == "dobj") return Role::Dobj;
  if (r == "iobj") return Role::Iobj;
  return std::nullopt;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  if (line.find('\t') != std::string::npos) {
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      std::string f = line.substr(start, tab - start);
      while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
      fields.push_back(std::move(f));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
  } else {
    std::istringstream in(line);
    for (std::string f; in >> f;) fields.push_back(std::move(f));
  }
  return fields;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

AnnotatedToken parse_token_line(const std::string& line, std::size_t line_no) {
  const auto fail = [&](const std::string& msg) {
    return ParseError("line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  const auto fields = split_fields(line);
  if (fields.size() != 5 && fields.size() != 6) throw fail("expected 6 tab-separated fields");
  AnnotatedToken tok;
  if (!all_digits(fields[0])) throw fail("bad token index '" + fields[0] + "'");
  tok.index = std::stoi(fields[0]);
  if (fields[1].empty() || fields[1] == "-") throw fail("missing lemma");
  tok.lemma = fields[1];
  const auto pos = parse_token_pos(fields[2]);
  if (!pos) throw fail("unknown part of speech '" + fields[2] + "'");
  tok.pos = *pos;
  const auto role = parse_role(fields[3]);
  if (!role) throw fail("unknown role '" + fields[3] + "'");
  tok.role = *role;
  if (fields[4] != "-") {
    if (!all_digits(fields[4])) throw fail("bad head index '" + fields[4] + "'");
    tok.head = std::stoi(fields[4]);
  }
  if (fields.size() == 6 && fields[5] != "-") {
    const std::string t = to_lower(fields[5]);
    if (t == "intrans") tok.transitivity = Transitivity::Intrans;
    else if (t == "trans") tok.transitivity = Transitivity::Trans;
    else if (t == "ditrans") tok.transitivity = Transitivity::Ditrans;
    else throw fail("unknown transitivity '" + fields[5] + "'");
  }
  return tok;
}

}  // namespace

std::vector<std::vector<AnnotatedToken>> parse_annotated(std::istream& in) {
  std::vector<std::vector<AnnotatedToken>> sentences;
  std::vector<AnnotatedToken> current;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) {
      if (!current.empty()) sentences.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (line.find_first_not_of(" \t") != std::string::npos &&
        line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    current.push_back(parse_token_line(line, line_no));
  }
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

std::vector<AnnotatedToken> parse_annotated_sentence(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<AnnotatedToken> all;
  for (auto& sentence : parse_annotated(in)) {
    all.insert(all.end(), sentence.begin(), sentence.end());
  }
  return all;
}

namespace {

class Deriver {
 public:
  explicit Deriver(std::span<const AnnotatedToken> tokens) : tokens_(tokens) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!position_.emplace(tokens_[i].index, i).second) {
        throw DerivationError("duplicate token index " + std::to_string(tokens_[i].index));
      }
    }
    for (const auto& tok : tokens_) {
      if (tok.head && !position_.count(*tok.head)) {
        throw DerivationError("token " + std::to_string(tok.index) + " references missing head " +
                              std::to_string(*tok.head));
      }
      if (tok.role != Role::None) {
        if (!tok.head || tokens_[position_.at(*tok.head)].pos != TokenPos::Verb) {
          throw DerivationError("token " + std::to_string(tok.index) +
                                " has a grammatical role but its head is not a verb");
        }
      }
    }
  }

  LogicalForm derive() {
    slots_.assign(tokens_.size(), std::nullopt);
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].pos == TokenPos::Noun) slots_[i] = Term::variable("x" + std::to_string(++nx_));
      if (tokens_[i].pos == TokenPos::Verb) slots_[i] = Term::variable("e" + std::to_string(++ne_));
    }
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const TokenPos p = tokens_[i].pos;
      if (p != TokenPos::Art && p != TokenPos::Other) variable_of(i);
    }

    LogicalForm form;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      const auto& tok = tokens_[i];
      const std::string name = to_lower(tok.lemma);
      switch (tok.pos) {
        case TokenPos::Art:
        case TokenPos::Other:
          break;
        case TokenPos::Verb:
          emit_verb(i, form);
          break;
        default:
          form.atoms.push_back(Atom{name, {*slots_[i]}});
          break;
      }
    }
    return form;
  }

 private:
  Term fresh_entity() { return Term::variable("x" + std::to_string(++nx_)); }

  const Term& variable_of(std::size_t i) {
    if (slots_[i]) return *slots_[i];
    const auto& tok = tokens_[i];
    if (tok.pos == TokenPos::Art || tok.pos == TokenPos::Other) {
      throw DerivationError("token " + std::to_string(tok.index) + " introduces no variable");
    }
    if (!tok.head) {
      slots_[i] = fresh_entity();
      return *slots_[i];
    }
    if (!resolving_.insert(i).second) {
      throw DerivationError("modifier chain through token " + std::to_string(tok.index) +
                            " is cyclic");
    }
    slots_[i] = variable_of(position_.at(*tok.head));
    resolving_.erase(i);
    return *slots_[i];
  }

  void emit_verb(std::size_t verb, LogicalForm& form) {
    const auto& tok = tokens_[verb];
    const Transitivity kind = tok.transitivity.value_or(Transitivity::Intrans);
    std::vector<std::size_t> subjects, dobjs, iobjs;
    for (std::size_t j = 0; j < tokens_.size(); ++j) {
      const auto& dep = tokens_[j];
      if (dep.role == Role::None || !dep.head || *dep.head != tok.index) continue;
      (dep.role == Role::Subj ? subjects : dep.role == Role::Dobj ? dobjs : iobjs).push_back(j);
    }
    if (!dobjs.empty() && kind == Transitivity::Intrans) {
      throw DerivationError("intransitive verb '" + tok.lemma + "' has a direct object");
    }
    if (!iobjs.empty() && kind != Transitivity::Ditrans) {
      throw DerivationError("verb '" + tok.lemma + "' has an indirect object but is not ditransitive");
    }
    const auto slot = [&](const std::vector<std::size_t>& deps) {
      return deps.empty() ? fresh_entity() : variable_of(deps.front());
    };
    const Term event = *slots_[verb];
    Atom atom{to_lower(tok.lemma), {event, slot(subjects)}};
    if (kind != Transitivity::Intrans) atom.args.push_back(slot(dobjs));
    if (kind == Transitivity::Ditrans) atom.args.push_back(slot(iobjs));
    form.atoms.push_back(std::move(atom));
    for (std::size_t s : subjects) {
      form.atoms.push_back(Atom{"agent", {variable_of(s), event}});
    }
  }

  std::span<const AnnotatedToken> tokens_;
  std::map<int, std::size_t> position_;
  std::vector<std::optional<Term>> slots_;
  std::set<std::size_t> resolving_;
  int nx_ = 0;
  int ne_ = 0;
};

}  // namespace

LogicalForm derive_logic_form(std::span<const AnnotatedToken> tokens) {
  return Deriver(tokens).derive();
}

std::vector<Clause> ClausalForm::all() const {
  std::vector<Clause> out = text;
  out.push_back(negated_hypothesis);
  return out;
}

ClausalForm clausify(std::span<const LogicalForm> text_forms, const LogicalForm& hypothesis,
                     TextTerms mode) {
  std::set<std::string> taken;
  for (const auto& form : text_forms)
    for (const auto& atom : form.atoms)
      for (const auto& t : atom.args)
        if (t.kind == TermKind::SkolemConst) taken.insert(t.name);

  ClausalForm out;
  int counter = 0;
  for (const auto& form : text_forms) {
    std::map<std::string, Term> skolems;
    for (const auto& atom : form.atoms) {
      Atom unit = atom;
      if (mode == TextTerms::Skolemize) {
        for (auto& t : unit.args) {
          if (!t.is_variable()) continue;
          auto it = skolems.find(t.name);
          if (it == skolems.end()) {
            std::string name;
            do name = "sk" + std::to_string(++counter);
            while (taken.count(name));
            it = skolems.emplace(t.name, Term::skolem(name)).first;
          }
          t = it->second;
        }
      }
      out.text.push_back(Clause({Literal{std::move(unit), false}}));
    }
  }

  for (const auto& atom : hypothesis.atoms) {
    Atom neg = atom;
    for (auto& t : neg.args) {
      if (t.is_variable()) t.name = "h_" + t.name;
    }
    out.negated_hypothesis.add(Literal{std::move(neg), true});
  }
  return out;
}

}  // namespace entail
