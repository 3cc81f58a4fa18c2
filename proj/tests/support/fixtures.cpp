#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fragmentc/demo/msc_components.hpp"
#include "fragmentc/grammar_loader.hpp"

namespace fragmentc::testing {

namespace fs = std::filesystem;

fs::path corpus_dir() { return fs::path(FRAGMENTC_CORPUS_DIR); }

fs::path corpus_path(std::string_view relative) { return corpus_dir() / fs::path(relative); }

std::string read_corpus(std::string_view relative) {
  auto text = read_file(corpus_path(relative));
  if (!text) throw std::runtime_error("missing corpus file " + std::string(relative));
  return *text;
}

std::string mail_chart() { return read_corpus("documents/mail.msc"); }

namespace {

LanguageService open_or_throw(std::string_view config) {
  auto service = open_tool(corpus_path(config), {corpus_dir()}, demo::default_registry());
  if (!service) throw std::runtime_error("cannot open " + std::string(config) + ": " +
                                         format_report(service.problems().front()));
  return std::move(service).value();
}

}  // namespace

const LanguageService& msc_service() {
  static const LanguageService service = open_or_throw("msc.mctool");
  return service;
}

const LanguageService& vip_service() {
  static const LanguageService service = open_or_throw("vipmsc.mctool");
  return service;
}

std::string replace_line(std::string_view text, int line, std::string_view replacement) {
  std::string out;
  int current = 1;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    bool last = end == std::string_view::npos;
    if (last) end = text.size();
    out += current == line ? std::string(replacement) : std::string(text.substr(begin, end - begin));
    if (last) break;
    out += '\n';
    begin = end + 1;
    ++current;
  }
  return out;
}

std::string line_of(std::string_view text, int line) {
  std::istringstream in{std::string(text)};
  std::string s;
  for (int i = 1; std::getline(in, s); ++i) {
    if (i == line) return s;
  }
  return {};
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("fragmentc-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

fs::path TempDir::write(std::string_view name, std::string_view content) const {
  fs::path p = path_ / fs::path(name);
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace fragmentc::testing
