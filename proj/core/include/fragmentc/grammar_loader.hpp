#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/composer.hpp"
#include "fragmentc/diagnostics.hpp"
#include "fragmentc/grammar.hpp"

namespace fragmentc {

inline constexpr std::string_view kGrammarPathEnv = "FRAGMENTC_GRAMMAR_PATH";

std::optional<std::string> read_file(const std::filesystem::path& path);

/// Splits a ':'-separated path list (';' is accepted too).
std::vector<std::filesystem::path> split_path_list(std::string_view list);

/// Roots from FRAGMENTC_GRAMMAR_PATH, empty when unset.
std::vector<std::filesystem::path> grammar_path_from_env();

/// Finds grammar files under a list of roots. `a.b.G` maps to `<root>/a/b/G.mc`;
/// a bare `G` also matches `<root>/G.mc` or a `G.mc` next to a grammar loaded
/// earlier. Results are cached; lookups are thread-safe.
class GrammarLoader {
 public:
  explicit GrammarLoader(std::vector<std::filesystem::path> roots);

  Result<GrammarFragment> load(std::string_view grammarName) const;
  FragmentLookup lookup() const;

  const std::vector<std::filesystem::path>& roots() const { return roots_; }

 private:
  std::optional<std::filesystem::path> locate(std::string_view grammarName) const;

  std::vector<std::filesystem::path> roots_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Result<GrammarFragment>> cache_;
  mutable std::vector<std::filesystem::path> seenDirs_;
};

Result<ToolConfig> load_tool_config(const std::filesystem::path& path);
Result<GrammarFragment> load_grammar_file(const std::filesystem::path& path);

}  // namespace fragmentc
