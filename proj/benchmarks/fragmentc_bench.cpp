#include <benchmark/benchmark.h>

#include <filesystem>
#include <stdexcept>

#include "fragmentc/demo/msc_components.hpp"
#include "fragmentc/grammar_loader.hpp"
#include "fragmentc/language_service.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kCorpus = FRAGMENTC_CORPUS_DIR;

fragmentc::LanguageService& service() {
  static auto s = [] {
    auto r = fragmentc::open_tool(kCorpus / "msc.mctool", {kCorpus}, fragmentc::demo::default_registry());
    if (!r) throw std::runtime_error("cannot open msc.mctool");
    return std::move(r).value();
  }();
  return s;
}

const std::string& mail() {
  static std::string text = *fragmentc::read_file(kCorpus / "documents/mail.msc");
  return text;
}

void BM_ComposeMscJava(benchmark::State& state) {
  for (auto _ : state) {
    auto r = fragmentc::open_tool(kCorpus / "msc.mctool", {kCorpus}, fragmentc::demo::default_registry());
    benchmark::DoNotOptimize(r.ok());
  }
}
BENCHMARK(BM_ComposeMscJava);

void BM_ParseMail(benchmark::State& state) {
  auto& s = service();
  for (auto _ : state) {
    auto outcome = s.engine().parse(mail(), "mail.msc");
    benchmark::DoNotOptimize(outcome.root.has_value());
  }
}
BENCHMARK(BM_ParseMail);

void BM_AnalyzeMail(benchmark::State& state) {
  auto& s = service();
  for (auto _ : state) {
    auto analysis = s.analyze(mail(), "mail.msc");
    benchmark::DoNotOptimize(analysis.features.folds.size());
  }
}
BENCHMARK(BM_AnalyzeMail);

void BM_FormatMail(benchmark::State& state) {
  auto& s = service();
  for (auto _ : state) {
    auto text = s.format(mail(), "mail.msc");
    benchmark::DoNotOptimize(text.ok());
  }
}
BENCHMARK(BM_FormatMail);

}  // namespace

BENCHMARK_MAIN();
