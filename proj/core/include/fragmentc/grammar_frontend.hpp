#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/diagnostics.hpp"
#include "fragmentc/grammar.hpp"

namespace fragmentc {

/// Parses one `.mc` grammar file. On failure the reports locate the first
/// offending token. Non-texteditor concepts are kept opaque and produce a
/// warning on success.
Result<GrammarFragment> parse_grammar(std::string_view text, std::string_view origin);

/// Parses one `.mctool` file (rootfactory block plus the language-level
/// texteditor concept).
Result<ToolConfig> parse_tool_config(std::string_view text, std::string_view origin);

/// Well-formedness checks of a fragment against its already-resolved
/// supergrammars. Returns an empty list iff the fragment is well formed.
/// Report order follows declaration order.
std::vector<ProblemReport> validate_fragment(const GrammarFragment& fragment,
                                             std::span<const GrammarFragment> resolvedSupers);

/// Canonical meta-level text of a fragment; re-parses to an equal fragment.
std::string meta_pretty_print(const GrammarFragment& fragment);

/// Canonical text of a single production body.
std::string meta_pretty_print(const BodyExpr& body);

}  // namespace fragmentc
