#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fragmentc/diagnostics.hpp"
#include "fragmentc/editor_services.hpp"
#include "fragmentc/source.hpp"
#include "fragmentc/syntax_tree.hpp"

namespace fragmentc {

/// `[startLine, startCol, endLine, endCol]`.
nlohmann::json span_to_json(const Span& span);
nlohmann::json report_to_json(const ProblemReport& report);
nlohmann::json outline_to_json(const OutlineSymbol& symbol);

/// `{highlights, folds, outline, diagnostics}` with sorted keys.
nlohmann::json features_to_json(const EditorFeatureSet& features);
std::string dump_features(const EditorFeatureSet& features);

/// `{production, attributes, span, children}`; node attributes are child
/// indices.
nlohmann::json tree_to_json(const SyntaxNode& node);

}  // namespace fragmentc
