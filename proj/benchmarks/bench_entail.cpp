#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "entail/entailment.hpp"

namespace {

using namespace entail;

const std::filesystem::path kData = ENTAIL_DATA_DIR;

const LexKB& kb() {
  static const LexKB k = LexKB::load_file(kData / "mini_wordnet.kb");
  return k;
}

LogicalForm load_form(const char* name) {
  std::ifstream in(kData / name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_logic_form(buf.str());
}

void BM_Similarity(benchmark::State& state) {
  const auto measure = static_cast<SimMeasure>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kb().similarity("emigrate", "come", measure));
}
BENCHMARK(BM_Similarity)->Arg(0)->Arg(1)->Arg(2);

void BM_UnifyAtoms(benchmark::State& state) {
  const Atom a = parse_logic_form("p(relative, uncle, x1, us)").atoms[0];
  const Atom b = parse_logic_form("p(x2, america, relative, uncle)").atoms[0];
  for (auto _ : state) benchmark::DoNotOptimize(unify_atoms(a, b, kb(), UnifyConfig{}));
}
BENCHMARK(BM_UnifyAtoms);

void BM_ProveWorkedExample(benchmark::State& state) {
  const std::vector<LogicalForm> text{load_form("t_george.lf")};
  const LogicalForm hyp = load_form("h_george.lf");
  ProveConfig cfg;
  cfg.text_terms = state.range(0) ? TextTerms::Skolemize : TextTerms::Keep;
  for (auto _ : state) benchmark::DoNotOptimize(entails_mrm(text, hyp, kb(), cfg));
}
BENCHMARK(BM_ProveWorkedExample)->Arg(0)->Arg(1);

void BM_FindLpe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(find_lpe(kb(), "murder", "die"));
}
BENCHMARK(BM_FindLpe);

}  // namespace

BENCHMARK_MAIN();
