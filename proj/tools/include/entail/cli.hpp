#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "entail/entailment.hpp"

namespace entail::cli {

struct CommandResult {
  int exit_code = 0;  // 0 success/entailed, 1 negative verdict, 2 usage or input error
  std::string output;
};

/// Runs one subcommand: sim, derive, prove, lpe, eval, kb-info. `args`
/// starts with the subcommand name (no program name).
CommandResult run_command(const std::vector<std::string>& args);

// -- corpus evaluation ------------------------------------------------------

struct SideSource {
  std::vector<LogicalForm> forms;
  std::vector<std::string> words;
};

struct CorpusPair {
  std::string id;
  std::optional<bool> gold;
  std::string t_source;  // raw text as written in the corpus
  std::string h_source;
  bool t_annotated = false;
  bool h_annotated = false;
};

struct CorpusEntry {
  std::optional<CorpusPair> pair;
  std::string id;     // best-effort id, also for skipped blocks
  std::string error;  // set when the block could not be read
};

/// Blank-line separated blocks of `id:`, optional `gold: yes|no`, and one
/// of `t-lf: <form>` / `t-ann:` + token lines, likewise for `h-`.
std::vector<CorpusEntry> parse_corpus(std::istream& in);

/// Reads either logic-form text (forms separated by blank lines) or an
/// annotated-token block. Throws ParseError / DerivationError.
SideSource load_side(const std::string& text, bool annotated);
bool looks_annotated(const std::string& text);

struct EvalRow {
  std::string id;
  std::optional<bool> gold;
  bool skipped = false;
  std::string skip_reason;
  Verdict mrm;
  Verdict lpe;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::size_t skipped = 0;
  std::optional<double> mrm_accuracy;  // absent without gold-labelled rows
  std::optional<double> lpe_accuracy;
  std::optional<double> agreement;     // absent without evaluated rows
};

struct SweepPoint {
  std::string parameter;  // "tau-total" or "tau-pairs"
  double value = 0.0;
  std::optional<double> mrm_accuracy;
  std::optional<double> lpe_accuracy;
  std::optional<double> agreement;
};

EvalReport eval_corpus(std::istream& corpus, const LexKB& kb, const ProveConfig& prove_cfg,
                       const LpeConfig& lpe_cfg);

/// Re-thresholds already evaluated rows; scores are threshold independent.
SweepPoint sweep_point(const EvalReport& report, const std::string& parameter, double value);

std::string render(const EvalReport& report);
std::string render(const SweepPoint& point);

}  // namespace entail::cli
