#include "entail/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "entail/errors.hpp"
#include "entail/text.hpp"

namespace entail::cli {

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string kb_path;
  std::string measure = "path";
  std::string pos;
  std::string word1, word2;
  std::string ann;
  std::string t_path, h_path;
  std::vector<std::string> t_words, h_words;
  std::string corpus;
  std::string sweep;
  double tau_step = 0.2;
  double tau_atom = 0.0;
  double tau_total = 0.0;
  std::size_t max_steps = 10000;
  std::size_t max_clause_size = 32;
  bool skolemize = false;
  bool trace = false;
  double tau_pairs = 0.0;
  int max_len = 6;
  bool no_synonyms = false;
  bool all_paths = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SimMeasure measure_of(const Options& o) {
  const auto m = parse_measure(o.measure);
  if (!m) throw UsageError("unknown measure '" + o.measure + "' (expected path, wup or lch)");
  return *m;
}

ProveConfig prove_config(const Options& o) {
  ProveConfig cfg;
  cfg.unify.tau_step = o.tau_step;
  cfg.unify.tau_atom = o.tau_atom;
  cfg.unify.measure = measure_of(o);
  cfg.tau_total = o.tau_total;
  cfg.max_steps = o.max_steps;
  cfg.max_clause_size = o.max_clause_size;
  cfg.text_terms = o.skolemize ? TextTerms::Skolemize : TextTerms::Keep;
  return cfg;
}

LpeConfig lpe_config(const Options& o) {
  LpeConfig cfg;
  cfg.tau_pairs = o.tau_pairs;
  cfg.max_len = o.max_len;
  cfg.count_synonyms = !o.no_synonyms;
  cfg.all_witnesses = o.all_paths;
  return cfg;
}

SideSource side_from_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return load_side(text, looks_annotated(text));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void add_prove_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--measure", o.measure, "Similarity measure: path, wup or lch")
      ->envname("ENTAIL_MEASURE");
  cmd->add_option("--tau-step", o.tau_step, "Per-comparison similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--tau-atom", o.tau_atom, "Atom unification score threshold")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--tau-total", o.tau_total, "Derivation score threshold")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-steps", o.max_steps, "Resolvent budget")->check(CLI::PositiveNumber);
  cmd->add_option("--max-clause-size", o.max_clause_size, "Largest resolvent kept")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--skolemize", o.skolemize, "Replace text variables by Skolem constants");
}

void add_lpe_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tau-pairs", o.tau_pairs, "Pair count threshold")->check(CLI::NonNegativeNumber);
  cmd->add_option("--max-len", o.max_len, "Longest path searched")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-synonyms", o.no_synonyms, "Do not count words sharing a synset");
  cmd->add_flag("--all-paths", o.all_paths, "List every witness path");
}

void write_prove_config(std::ostream& out, const ProveConfig& cfg) {
  out << "measure: " << to_string(cfg.unify.measure) << "\n";
  out << "tau-step: " << format_number(cfg.unify.tau_step) << "\n";
  out << "tau-atom: " << format_number(cfg.unify.tau_atom) << "\n";
  out << "tau-total: " << format_number(cfg.tau_total) << "\n";
  out << "max-steps: " << cfg.max_steps << "\n";
  out << "text-terms: " << (cfg.text_terms == TextTerms::Keep ? "keep" : "skolemize") << "\n";
}

int cmd_sim(const Options& o, std::ostream& out) {
  const LexKB kb = LexKB::load_file(o.kb_path);
  std::optional<Pos> pos;
  if (!o.pos.empty()) {
    pos = parse_pos(o.pos);
    if (!pos) throw UsageError("unknown part of speech '" + o.pos + "'");
  }
  const SimMeasure m = measure_of(o);
  out << "measure: " << to_string(m) << "\n";
  out << "w1: " << to_lower(o.word1) << "\n";
  out << "w2: " << to_lower(o.word2) << "\n";
  out << "similarity: " << format_number(kb.similarity(o.word1, o.word2, m, pos)) << "\n";
  return 0;
}

int cmd_derive(const Options& o, std::ostream& out) {
  std::istringstream in(read_file(o.ann));
  const auto sentences = parse_annotated(in);
  for (const auto& sentence : sentences) out << render(derive_logic_form(sentence)) << "\n";
  return 0;
}

int cmd_prove(const Options& o, std::ostream& out) {
  const LexKB kb = LexKB::load_file(o.kb_path);
  const ProveConfig cfg = prove_config(o);
  const SideSource t = side_from_file(o.t_path);
  const SideSource h = side_from_file(o.h_path);
  if (h.forms.size() != 1) throw std::runtime_error(o.h_path + ": hypothesis must be a single form");
  const Verdict v = entails_mrm(t.forms, h.forms.front(), kb, cfg);
  out << "method: mrm\n";
  out << "entailed: " << (v.entailed ? "true" : "false") << "\n";
  out << "outcome: " << v.reason << "\n";
  out << "score: " << format_number(v.score) << "\n";
  out << "steps: " << (v.derivation ? v.derivation->steps.size() : 0) << "\n";
  write_prove_config(out, cfg);
  if (o.trace && v.derivation) out << "trace:\n" << render_trace(*v.derivation);
  return v.entailed ? 0 : 1;
}

int cmd_lpe(const Options& o, std::ostream& out) {
  const bool words = !o.t_words.empty() || !o.h_words.empty();
  const bool files = !o.t_path.empty() || !o.h_path.empty();
  if (words == files) throw UsageError("give either --t-words/--h-words or --t/--h");
  const LexKB kb = LexKB::load_file(o.kb_path);
  std::vector<std::string> ts, hs;
  if (words) {
    if (o.t_words.empty() || o.h_words.empty()) throw UsageError("--t-words and --h-words go together");
    ts = o.t_words;
    hs = o.h_words;
  } else {
    if (o.t_path.empty() || o.h_path.empty()) throw UsageError("--t and --h go together");
    ts = side_from_file(o.t_path).words;
    hs = side_from_file(o.h_path).words;
  }
  const LpeConfig cfg = lpe_config(o);
  const Verdict v = entails_lpe(ts, hs, kb, cfg);
  out << "method: lpe\n";
  out << "entailed: " << (v.entailed ? "true" : "false") << "\n";
  out << "count: " << format_number(v.score) << "\n";
  out << "tau-pairs: " << format_number(cfg.tau_pairs) << "\n";
  out << "max-len: " << cfg.max_len << "\n";
  for (const auto& e : v.pairs) {
    out << render(e) << "\n";
    for (const auto& alt : e.alternatives) out << "  path: " << render(alt) << "\n";
  }
  return v.entailed ? 0 : 1;
}

struct SweepSpec {
  std::string parameter;
  double from, to, step;
};

SweepSpec parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw UsageError("sweep spec must look like tau-total=a:b:step");
  SweepSpec s;
  s.parameter = spec.substr(0, eq);
  if (s.parameter != "tau-total" && s.parameter != "tau-pairs") {
    throw UsageError("sweep parameter must be tau-total or tau-pairs");
  }
  std::istringstream in(spec.substr(eq + 1));
  char c1 = 0, c2 = 0;
  if (!(in >> s.from >> c1 >> s.to >> c2 >> s.step) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    throw UsageError("sweep range must be a:b:step");
  }
  if (!(s.step > 0) || s.to < s.from || s.from < 0) throw UsageError("sweep needs 0 <= a <= b and step > 0");
  return s;
}

int cmd_eval(const Options& o, std::ostream& out) {
  std::optional<SweepSpec> sweep;
  if (!o.sweep.empty()) sweep = parse_sweep(o.sweep);
  const LexKB kb = LexKB::load_file(o.kb_path);
  std::istringstream corpus(read_file(o.corpus));
  const EvalReport report = eval_corpus(corpus, kb, prove_config(o), lpe_config(o));
  out << render(report);
  if (sweep) {
    const auto n = static_cast<std::size_t>(std::floor((sweep->to - sweep->from) / sweep->step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) {
      out << render(sweep_point(report, sweep->parameter, sweep->from + static_cast<double>(k) * sweep->step));
    }
  }
  return 0;
}

int cmd_kb_info(const Options& o, std::ostream& out) {
  const LexKB kb = LexKB::load_file(o.kb_path);
  std::size_t per_pos[4] = {0, 0, 0, 0};
  std::size_t per_rel[3] = {0, 0, 0};
  for (const auto& s : kb.synsets()) ++per_pos[static_cast<int>(s.pos)];
  for (const auto& e : kb.edges()) ++per_rel[static_cast<int>(e.rel)];
  out << "synsets: " << kb.synset_count() << "\n";
  out << "edges: " << kb.edge_count() << "\n";
  for (Pos p : {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv}) {
    out << "synsets-" << to_string(p) << ": " << per_pos[static_cast<int>(p)] << "\n";
  }
  for (SemRelation r : {SemRelation::IsA, SemRelation::Entail, SemRelation::CauseTo}) {
    out << "edges-" << to_string(r) << ": " << per_rel[static_cast<int>(r)] << "\n";
  }
  for (Pos p : {Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv}) {
    out << "max-depth-" << to_string(p) << ": " << kb.max_depth(p) << "\n";
  }
  return 0;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Textual entailment by lexical resolution and lexical paths", "entail"};
  app.set_help_flag("--help", "Print this help message and exit");  // -h is taken by --h
  app.require_subcommand(1);

  const auto add_kb = [&](CLI::App* cmd) {
    cmd->add_option("--kb", o.kb_path, "Knowledge base file")->envname("ENTAIL_KB")->required();
  };

  auto* sim = app.add_subcommand("sim", "Word similarity");
  add_kb(sim);
  sim->add_option("--measure", o.measure, "path, wup or lch")->envname("ENTAIL_MEASURE");
  sim->add_option("--pos", o.pos, "Restrict to one part of speech (n, v, a, r)");
  sim->add_option("w1", o.word1)->required();
  sim->add_option("w2", o.word2)->required();

  auto* derive = app.add_subcommand("derive", "Logic forms from annotated tokens");
  derive->add_option("--ann", o.ann, "Annotated token file")->required();

  auto* prove = app.add_subcommand("prove", "Modified resolution entailment");
  add_kb(prove);
  prove->add_option("--t", o.t_path, "Text: logic forms or annotated tokens")->required();
  prove->add_option("--h", o.h_path, "Hypothesis: logic form or annotated tokens")->required();
  add_prove_flags(prove, o);
  prove->add_flag("--trace", o.trace, "Append the derivation trace");

  auto* lpe = app.add_subcommand("lpe", "Lexical path entailment");
  add_kb(lpe);
  lpe->add_option("--t-words", o.t_words, "Text words")->delimiter(',');
  lpe->add_option("--h-words", o.h_words, "Hypothesis words")->delimiter(',');
  lpe->add_option("--t", o.t_path, "Text file");
  lpe->add_option("--h", o.h_path, "Hypothesis file");
  add_lpe_flags(lpe, o);

  auto* eval = app.add_subcommand("eval", "Run both methods over a pair corpus");
  add_kb(eval);
  eval->add_option("--corpus", o.corpus, "Pair corpus file")->required();
  add_prove_flags(eval, o);
  add_lpe_flags(eval, o);
  eval->add_option("--sweep", o.sweep, "tau-total=a:b:step or tau-pairs=a:b:step");

  auto* info = app.add_subcommand("kb-info", "Knowledge base statistics");
  add_kb(info);

  std::ostringstream out;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str() + err.str()};
  }

  try {
    int code = 0;
    if (sim->parsed()) code = cmd_sim(o, out);
    else if (derive->parsed()) code = cmd_derive(o, out);
    else if (prove->parsed()) code = cmd_prove(o, out);
    else if (lpe->parsed()) code = cmd_lpe(o, out);
    else if (eval->parsed()) code = cmd_eval(o, out);
    else if (info->parsed()) code = cmd_kb_info(o, out);
    return {code, out.str()};
  } catch (const ParseError& e) {
    return {2, "error: " + std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return {2, "error: " + std::string(e.what()) + "\n"};
  }
}

}  // namespace entail::cli
