#include "fragmentc/editor_services.hpp"

namespace fragmentc {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string render_scalar(const AttrScalar& value, const SyntaxNode& owner, std::string_view text) {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  const SyntaxNode* n = owner.child(std::get<ChildRef>(value));
  if (!n) return {};
  if (!text.empty() && n->span.end.offset <= text.size()) {
    return std::string(trim(text.substr(n->span.start.offset, n->span.end.offset - n->span.start.offset)));
  }
  return n->leaf_text();
}

void collect_outline(const SyntaxNode& node, const EffectiveEditorConfig& config, std::string_view text,
                     std::vector<OutlineSymbol>& out) {
  auto seg = config.segments.find(node.production);
  if (seg == config.segments.end()) {
    for (const auto& c : node.children) collect_outline(c, config, text, out);
    return;
  }
  OutlineSymbol sym;
  sym.label = render_segment_label(seg->second, node, text);
  sym.iconPath = seg->second.iconPath;
  sym.span = node.span;
  for (const auto& c : node.children) collect_outline(c, config, text, sym.children);
  out.push_back(std::move(sym));
}

}  // namespace

std::string_view to_string(HighlightCategory category) {
  return category == HighlightCategory::Keyword ? "keyword" : "comment";
}

std::vector<HighlightSpan> highlight(std::span<const Token> tokens) {
  std::vector<HighlightSpan> out;
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Keyword) {
      out.push_back({t.span, HighlightCategory::Keyword});
    } else if (t.is_comment()) {
      out.push_back({t.span, HighlightCategory::Comment});
    }
  }
  return out;
}

std::vector<FoldingRange> folding_ranges(const SyntaxNode& root, const EffectiveEditorConfig& config,
                                         std::string_view text) {
  std::vector<FoldingRange> out;
  walk(root, [&](const SyntaxNode& node) {
    if (!config.foldable.count(node.production)) return;
    if (node.span.end.line <= node.span.start.line) return;
    std::string_view rest = text.substr(std::min(node.span.start.offset, text.size()));
    std::string_view first = rest.substr(0, rest.find('\n'));
    out.push_back({node.span, std::string(trim(first)) + ".."});
  });
  return out;
}

std::vector<OutlineSymbol> outline(const SyntaxNode& root, const EffectiveEditorConfig& config,
                                   std::string_view text) {
  std::vector<OutlineSymbol> out;
  collect_outline(root, config, text, out);
  return out;
}

std::string render_segment_label(const SegmentDef& segment, const SyntaxNode& node, std::string_view text) {
  std::string out;
  for (const auto& item : segment.templateItems) {
    if (item.kind == TemplateItem::Kind::Literal) {
      out += item.text;
      continue;
    }
    auto it = node.attributes.find(item.text);
    if (it == node.attributes.end()) continue;
    if (const auto* list = std::get_if<std::vector<AttrScalar>>(&it->second)) {
      for (std::size_t i = 0; i < list->size(); ++i) {
        if (i > 0) out += ", ";
        out += render_scalar((*list)[i], node, text);
      }
    } else {
      out += render_scalar(std::get<AttrScalar>(it->second), node, text);
    }
  }
  return out;
}

std::vector<ProblemReport> diagnostics(const ParseOutcome& outcome, std::span<const WorkflowPass> passes,
                                       std::string_view file, const DocumentLookup& workspace) {
  std::vector<ProblemReport> out = outcome.problems;
  if (!outcome.root) return out;
  for (const auto& pass : passes) {
    auto reports = pass.run(*outcome.root, file, workspace);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  return out;
}

std::string format(const SyntaxNode& root, const std::vector<Token>& tokens, const PrinterChain& printers,
                   const Lexer& lexer) {
  return printers.format(root, tokens, lexer);
}

ActionResult ActionResult::error(std::string message, std::string file, int line, int column) {
  return {Reports{{make_error(std::move(message), std::move(file), line, column, "action")}}};
}

void ComponentRegistry::add_workflow(std::string name, WorkflowPass::Run run) {
  workflows_[std::move(name)] = std::move(run);
}

void ComponentRegistry::add_editor_action(std::string id, EditorAction action) {
  editorActions_[std::move(id)] = std::move(action);
}

void ComponentRegistry::add_navigator_action(std::string id, NavigatorAction action) {
  navigatorActions_[std::move(id)] = std::move(action);
}

void ComponentRegistry::add_printer(std::string name, std::string fragment,
                                    std::shared_ptr<const PrettyPrinter> printer) {
  printers_[std::move(name)] = {std::move(fragment), std::move(printer)};
}

const WorkflowPass::Run* ComponentRegistry::workflow(std::string_view name) const {
  auto it = workflows_.find(name);
  return it == workflows_.end() ? nullptr : &it->second;
}

const EditorAction* ComponentRegistry::editor_action(std::string_view id) const {
  auto it = editorActions_.find(id);
  return it == editorActions_.end() ? nullptr : &it->second;
}

const NavigatorAction* ComponentRegistry::navigator_action(std::string_view id) const {
  auto it = navigatorActions_.find(id);
  return it == navigatorActions_.end() ? nullptr : &it->second;
}

const ComponentRegistry::PrinterEntry* ComponentRegistry::printer(std::string_view name) const {
  auto it = printers_.find(name);
  return it == printers_.end() ? nullptr : &it->second;
}

ActionResult run_editor_action(std::string_view actionId, const EditorActionRequest& request,
                               const ComponentRegistry& registry, const ActionEnvironment& env) {
  const auto* action = registry.editor_action(actionId);
  if (!action) return ActionResult::error("unknown action " + std::string(actionId), request.path);
  return (*action)(request, env);
}

ActionResult run_navigator_action(std::string_view actionId,
                                  const std::map<std::string, std::string>& filesToProjects,
                                  const ComponentRegistry& registry, const ActionEnvironment& env) {
  const auto* action = registry.navigator_action(actionId);
  if (!action) return ActionResult::error("unknown action " + std::string(actionId));
  return (*action)(filesToProjects, env);
}

}  // namespace fragmentc
