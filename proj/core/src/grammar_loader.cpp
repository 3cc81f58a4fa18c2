#include "fragmentc/grammar_loader.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fragmentc/grammar_frontend.hpp"

namespace fragmentc {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> split_path_list(std::string_view list) {
  std::vector<fs::path> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t end = list.find_first_of(":;", start);
    if (end == std::string_view::npos) end = list.size();
    if (end > start) out.emplace_back(std::string(list.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

std::vector<fs::path> grammar_path_from_env() {
  const char* value = std::getenv(std::string(kGrammarPathEnv).c_str());
  return value ? split_path_list(value) : std::vector<fs::path>{};
}

GrammarLoader::GrammarLoader(std::vector<fs::path> roots) : roots_(std::move(roots)) {}

std::optional<fs::path> GrammarLoader::locate(std::string_view grammarName) const {
  std::string rel(grammarName);
  std::replace(rel.begin(), rel.end(), '.', '/');
  std::string simple(simple_name(grammarName));
  std::vector<fs::path> candidates;
  for (const auto& root : roots_) candidates.push_back(root / (rel + ".mc"));
  for (const auto& root : roots_) candidates.push_back(root / (simple + ".mc"));
  for (const auto& dir : seenDirs_) candidates.push_back(dir / (simple + ".mc"));
  for (const auto& c : candidates) {
    std::error_code ec;
    if (fs::is_regular_file(c, ec)) return c;
  }
  return std::nullopt;
}

Result<GrammarFragment> GrammarLoader::load(std::string_view grammarName) const {
  std::lock_guard lock(mutex_);
  std::string key(grammarName);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  auto path = locate(grammarName);
  Result<GrammarFragment> result = Result<GrammarFragment>::failure(
      make_error("grammar " + key + " not found on the grammar path", "", 1, 1, "loader"));
  if (path) {
    result = load_grammar_file(*path);
    if (result.ok() && result->name != simple_name(grammarName)) {
      result = Result<GrammarFragment>::failure(make_error(
          "file declares grammar " + result->name + ", expected " + std::string(simple_name(grammarName)),
          path->string(), result->line, 1, "loader"));
    }
    auto dir = path->parent_path();
    if (std::find(seenDirs_.begin(), seenDirs_.end(), dir) == seenDirs_.end()) seenDirs_.push_back(dir);
  }
  cache_.emplace(key, result);
  return result;
}

FragmentLookup GrammarLoader::lookup() const {
  return [this](std::string_view name) { return load(name); };
}

Result<ToolConfig> load_tool_config(const fs::path& path) {
  auto text = read_file(path);
  if (!text) {
    return Result<ToolConfig>::failure(make_error("cannot read " + path.string(), path.string(), 1, 1, "loader"));
  }
  return parse_tool_config(*text, path.string());
}

Result<GrammarFragment> load_grammar_file(const fs::path& path) {
  auto text = read_file(path);
  if (!text) {
    return Result<GrammarFragment>::failure(
        make_error("cannot read " + path.string(), path.string(), 1, 1, "loader"));
  }
  return parse_grammar(*text, path.string());
}

}  // namespace fragmentc
