#include <algorithm>
#include <cctype>
#include <istream>
#include <set>
#include <sstream>

#include "entail/cli.hpp"
#include "entail/errors.hpp"
#include "entail/text.hpp"

namespace entail::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_blank(const std::string& s) { return trim(s).empty(); }

bool is_key(const std::string& key) {
  static const std::set<std::string> keys = {"id", "gold", "t-lf", "h-lf", "t-ann", "h-ann"};
  return keys.count(key) != 0;
}

CorpusEntry read_block(const std::vector<std::string>& lines, std::size_t ordinal) {
  CorpusEntry entry;
  entry.id = "#" + std::to_string(ordinal);
  CorpusPair pair;
  bool have_t = false, have_h = false, have_id = false;
  std::string current;
  const auto fail = [&](const std::string& msg) {
    entry.error = msg;
    entry.pair.reset();
    return entry;
  };
  for (const auto& raw : lines) {
    const std::string line = trim(raw);
    if (line.starts_with("#")) continue;
    const auto colon = line.find(':');
    const std::string key = colon == std::string::npos ? "" : to_lower(trim(line.substr(0, colon)));
    if (is_key(key)) {
      const std::string value = trim(line.substr(colon + 1));
      current = key;
      if (key == "id") {
        if (value.empty()) return fail("empty id");
        pair.id = entry.id = value;
        have_id = true;
      } else if (key == "gold") {
        const std::string g = to_lower(value);
        if (g == "yes" || g == "true") pair.gold = true;
        else if (g == "no" || g == "false") pair.gold = false;
        else return fail("gold label must be yes or no");
      } else {
        const bool text_side = key[0] == 't';
        if (text_side ? have_t : have_h) return fail("duplicate " + key.substr(0, 1) + "- field");
        (text_side ? have_t : have_h) = true;
        (text_side ? pair.t_annotated : pair.h_annotated) = key.ends_with("ann");
        (text_side ? pair.t_source : pair.h_source) = value;
      }
      continue;
    }
    if (current == "t-lf" || current == "h-lf") {
      (current[0] == 't' ? pair.t_source : pair.h_source) += " " + line;
    } else if (current == "t-ann" || current == "h-ann") {
      auto& src = current[0] == 't' ? pair.t_source : pair.h_source;
      if (!src.empty()) src += "\n";
      src += raw;
    } else {
      return fail("unexpected line '" + line + "'");
    }
  }
  if (!have_id) pair.id = entry.id;
  if (!have_t || !have_h) return fail("pair needs both a t- and an h- field");
  entry.pair = std::move(pair);
  return entry;
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> entries;
  std::vector<std::string> block;
  std::set<std::string> ids;
  const auto flush = [&] {
    const bool only_comments = std::all_of(block.begin(), block.end(),
                                           [](const std::string& l) { return trim(l).starts_with("#"); });
    if (only_comments) {
      block.clear();
      return;
    }
    auto entry = read_block(block, entries.size() + 1);
    if (entry.pair && !ids.insert(entry.pair->id).second) {
      entry.error = "duplicate id";
      entry.pair.reset();
    }
    entries.push_back(std::move(entry));
    block.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) {
      flush();
    } else {
      block.push_back(line);
    }
  }
  flush();
  return entries;
}

bool looks_annotated(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const std::string t = trim(line);
    if (t.empty() || t.starts_with("#")) continue;
    return t.find('(') == std::string::npos;
  }
  return false;
}

SideSource load_side(const std::string& text, bool annotated) {
  SideSource side;
  if (annotated) {
    std::istringstream in(text);
    for (const auto& sentence : parse_annotated(in)) {
      side.forms.push_back(derive_logic_form(sentence));
      const auto words = content_words(sentence);
      side.words.insert(side.words.end(), words.begin(), words.end());
    }
    return side;
  }
  std::istringstream in(text);
  std::string chunk;
  const auto flush = [&] {
    if (is_blank(chunk)) return;
    side.forms.push_back(parse_logic_form(chunk));
    const auto words = content_words(side.forms.back());
    side.words.insert(side.words.end(), words.begin(), words.end());
    chunk.clear();
  };
  for (std::string line; std::getline(in, line);) {
    const std::string t = trim(line);
    if (t.starts_with("#")) continue;
    if (t.empty()) {
      flush();
      chunk.clear();
    } else {
      chunk += line + "\n";
    }
  }
  flush();
  return side;
}

namespace {

struct Aggregates {
  std::optional<double> mrm_accuracy;
  std::optional<double> lpe_accuracy;
  std::optional<double> agreement;
};

bool mrm_at(const Verdict& v, double tau_total) {
  return v.derivation.has_value() && v.score > tau_total;
}

Aggregates aggregate(const std::vector<EvalRow>& rows, std::optional<double> tau_total,
                     std::optional<double> tau_pairs) {
  std::size_t evaluated = 0, labelled = 0, agree = 0, mrm_ok = 0, lpe_ok = 0;
  for (const auto& row : rows) {
    if (row.skipped) continue;
    const bool m = tau_total ? mrm_at(row.mrm, *tau_total) : row.mrm.entailed;
    const bool l = tau_pairs ? row.lpe.score > *tau_pairs : row.lpe.entailed;
    ++evaluated;
    if (m == l) ++agree;
    if (row.gold) {
      ++labelled;
      if (m == *row.gold) ++mrm_ok;
      if (l == *row.gold) ++lpe_ok;
    }
  }
  Aggregates a;
  if (evaluated) a.agreement = static_cast<double>(agree) / static_cast<double>(evaluated);
  if (labelled) {
    a.mrm_accuracy = static_cast<double>(mrm_ok) / static_cast<double>(labelled);
    a.lpe_accuracy = static_cast<double>(lpe_ok) / static_cast<double>(labelled);
  }
  return a;
}

std::string rate(const std::optional<double>& r) { return r ? format_number(*r) : "n/a"; }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

EvalReport eval_corpus(std::istream& corpus, const LexKB& kb, const ProveConfig& prove_cfg,
                       const LpeConfig& lpe_cfg) {
  EvalReport report;
  for (const auto& entry : parse_corpus(corpus)) {
    EvalRow row;
    row.id = entry.id;
    if (!entry.pair) {
      row.skipped = true;
      row.skip_reason = entry.error;
      report.rows.push_back(std::move(row));
      continue;
    }
    const auto& pair = *entry.pair;
    row.gold = pair.gold;
    try {
      const SideSource t = load_side(pair.t_source, pair.t_annotated);
      const SideSource h = load_side(pair.h_source, pair.h_annotated);
      if (h.forms.size() != 1) throw DerivationError("hypothesis must be a single form");
      row.mrm = entails_mrm(t.forms, h.forms.front(), kb, prove_cfg);
      row.lpe = entails_lpe(t.words, h.words, kb, lpe_cfg);
    } catch (const std::exception& e) {
      row.skipped = true;
      row.skip_reason = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  report.skipped = static_cast<std::size_t>(
      std::count_if(report.rows.begin(), report.rows.end(), [](const EvalRow& r) { return r.skipped; }));
  const auto agg = aggregate(report.rows, std::nullopt, std::nullopt);
  report.mrm_accuracy = agg.mrm_accuracy;
  report.lpe_accuracy = agg.lpe_accuracy;
  report.agreement = agg.agreement;
  return report;
}

SweepPoint sweep_point(const EvalReport& report, const std::string& parameter, double value) {
  SweepPoint p;
  p.parameter = parameter;
  p.value = value;
  const auto agg = parameter == "tau-total" ? aggregate(report.rows, value, std::nullopt)
                                            : aggregate(report.rows, std::nullopt, value);
  p.mrm_accuracy = agg.mrm_accuracy;
  p.lpe_accuracy = agg.lpe_accuracy;
  p.agreement = agg.agreement;
  return p;
}

std::string render(const EvalReport& report) {
  std::ostringstream out;
  out << "pairs: " << report.rows.size() << "\n";
  out << "skipped: " << report.skipped << "\n";
  for (const auto& row : report.rows) {
    out << "row " << row.id << ": ";
    if (row.skipped) {
      out << "skipped (" << row.skip_reason << ")\n";
      continue;
    }
    out << "mrm=" << yes_no(row.mrm.entailed) << " mrm-score=" << format_number(row.mrm.score)
        << " mrm-outcome=" << row.mrm.reason << " lpe=" << yes_no(row.lpe.entailed)
        << " lpe-count=" << format_number(row.lpe.score)
        << " gold=" << (row.gold ? yes_no(*row.gold) : "n/a") << "\n";
  }
  out << "mrm-accuracy: " << rate(report.mrm_accuracy) << "\n";
  out << "lpe-accuracy: " << rate(report.lpe_accuracy) << "\n";
  out << "agreement: " << rate(report.agreement) << "\n";
  return out.str();
}

std::string render(const SweepPoint& p) {
  return "sweep " + p.parameter + "=" + format_number(p.value) +
         ": mrm-accuracy=" + rate(p.mrm_accuracy) + " lpe-accuracy=" + rate(p.lpe_accuracy) +
         " agreement=" + rate(p.agreement) + "\n";
}

}  // namespace entail::cli
