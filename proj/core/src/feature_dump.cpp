#include "fragmentc/feature_dump.hpp"

namespace fragmentc {

using nlohmann::json;

json span_to_json(const Span& span) {
  return json::array({span.start.line, span.start.column, span.end.line, span.end.column});
}

json report_to_json(const ProblemReport& r) {
  return {{"severity", std::string(to_string(r.severity))},
          {"message", r.message},
          {"file", r.file},
          {"line", r.line},
          {"column", r.column},
          {"source", r.source}};
}

json outline_to_json(const OutlineSymbol& symbol) {
  json children = json::array();
  for (const auto& c : symbol.children) children.push_back(outline_to_json(c));
  return {{"label", symbol.label},
          {"icon", symbol.iconPath},
          {"span", span_to_json(symbol.span)},
          {"children", std::move(children)}};
}

json features_to_json(const EditorFeatureSet& features) {
  json highlights = json::array();
  for (const auto& h : features.highlights) {
    highlights.push_back({{"span", span_to_json(h.span)}, {"category", std::string(to_string(h.category))}});
  }
  json folds = json::array();
  for (const auto& f : features.folds) {
    folds.push_back({{"span", span_to_json(f.span)}, {"placeholder", f.placeholder}});
  }
  json outline = json::array();
  for (const auto& s : features.outline) outline.push_back(outline_to_json(s));
  json diagnostics = json::array();
  for (const auto& r : features.diagnostics) diagnostics.push_back(report_to_json(r));
  return {{"highlights", std::move(highlights)},
          {"folds", std::move(folds)},
          {"outline", std::move(outline)},
          {"diagnostics", std::move(diagnostics)}};
}

namespace {

json scalar_to_json(const AttrScalar& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* b = std::get_if<bool>(&value)) return *b;
  return {{"child", std::get<ChildRef>(value).index}};
}

}  // namespace

json tree_to_json(const SyntaxNode& node) {
  json attributes = json::object();
  for (const auto& [name, value] : node.attributes) {
    if (const auto* list = std::get_if<std::vector<AttrScalar>>(&value)) {
      json items = json::array();
      for (const auto& v : *list) items.push_back(scalar_to_json(v));
      attributes[name] = std::move(items);
    } else {
      attributes[name] = scalar_to_json(std::get<AttrScalar>(value));
    }
  }
  json children = json::array();
  for (const auto& c : node.children) children.push_back(tree_to_json(c));
  return {{"production", node.production},
          {"attributes", std::move(attributes)},
          {"span", span_to_json(node.span)},
          {"children", std::move(children)}};
}

std::string dump_features(const EditorFeatureSet& features) { return features_to_json(features).dump(2) + "\n"; }

}  // namespace fragmentc
