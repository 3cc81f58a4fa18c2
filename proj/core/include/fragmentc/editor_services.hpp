#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fragmentc/composer.hpp"
#include "fragmentc/diagnostics.hpp"
#include "fragmentc/lexer.hpp"
#include "fragmentc/parse_engine.hpp"
#include "fragmentc/pretty_printer.hpp"
#include "fragmentc/syntax_tree.hpp"

namespace fragmentc {

enum class HighlightCategory { Keyword, Comment };

std::string_view to_string(HighlightCategory category);

struct HighlightSpan {
  Span span;
  HighlightCategory category = HighlightCategory::Keyword;

  friend bool operator==(const HighlightSpan&, const HighlightSpan&) = default;
};

struct FoldingRange {
  Span span;
  /// First line of the region followed by "..".
  std::string placeholder;

  friend bool operator==(const FoldingRange&, const FoldingRange&) = default;
};

struct OutlineSymbol {
  std::string label;
  std::string iconPath;
  Span span;
  std::vector<OutlineSymbol> children;

  friend bool operator==(const OutlineSymbol&, const OutlineSymbol&) = default;
};

struct EditorFeatureSet {
  std::vector<HighlightSpan> highlights;
  std::vector<FoldingRange> folds;
  std::vector<OutlineSymbol> outline;
  std::vector<ProblemReport> diagnostics;
  std::vector<NamedAction> actions;
  bool formatAvailable = false;
};

/// One span per keyword token and per comment token, in document order.
std::vector<HighlightSpan> highlight(std::span<const Token> tokens);

std::vector<FoldingRange> folding_ranges(const SyntaxNode& root, const EffectiveEditorConfig& config,
                                         std::string_view text);

/// `text` is the parsed document; node-valued attributes render as their
/// trimmed source slice.
std::vector<OutlineSymbol> outline(const SyntaxNode& root, const EffectiveEditorConfig& config,
                                   std::string_view text = {});

/// Template items concatenated without separators; lists are joined with
/// ", " and absent attributes render empty.
std::string render_segment_label(const SegmentDef& segment, const SyntaxNode& node,
                                 std::string_view text = {});

/// Reads another document of the workspace by path.
using DocumentLookup = std::function<std::optional<std::string>(std::string_view path)>;

struct WorkflowPass {
  using Run = std::function<std::vector<ProblemReport>(const SyntaxNode& root, std::string_view file,
                                                       const DocumentLookup& workspace)>;
  std::string name;
  Run run;
};

/// Parser reports, then each pass in order. Passes only run on a tree.
std::vector<ProblemReport> diagnostics(const ParseOutcome& outcome, std::span<const WorkflowPass> passes,
                                       std::string_view file, const DocumentLookup& workspace = {});

std::string format(const SyntaxNode& root, const std::vector<Token>& tokens, const PrinterChain& printers,
                   const Lexer& lexer);

struct TextEdit {
  Span range;
  std::string newText;

  friend bool operator==(const TextEdit&, const TextEdit&) = default;
};

struct DocumentEdits {
  std::string path;
  std::vector<TextEdit> edits;
};

struct NewFiles {
  /// Path to content.
  std::map<std::string, std::string> files;
};

struct Reports {
  std::vector<ProblemReport> reports;
};

/// Exactly one of: edits for one document, generated files, or reports.
struct ActionResult {
  std::variant<DocumentEdits, NewFiles, Reports> value;

  bool failed() const {
    const auto* r = std::get_if<Reports>(&value);
    return r && has_errors(r->reports);
  }
  static ActionResult error(std::string message, std::string file = {}, int line = 1, int column = 1);
};

struct EditorActionRequest {
  std::string text;
  std::string path;
  Span selection;
};

/// Language facilities handed to actions.
struct ActionEnvironment {
  const ParserEngine* engine = nullptr;
  const PrinterChain* printers = nullptr;
  DocumentLookup workspace;
};

using EditorAction = std::function<ActionResult(const EditorActionRequest&, const ActionEnvironment&)>;
/// Receives every selected file mapped to its project.
using NavigatorAction =
    std::function<ActionResult(const std::map<std::string, std::string>&, const ActionEnvironment&)>;

/// Hand-written components addressed by the names a tool configuration uses:
/// workflows, action class names and pretty-printer names.
class ComponentRegistry {
 public:
  void add_workflow(std::string name, WorkflowPass::Run run);
  void add_editor_action(std::string id, EditorAction action);
  void add_navigator_action(std::string id, NavigatorAction action);
  /// `fragment` is the grammar whose nodes the printer handles.
  void add_printer(std::string name, std::string fragment, std::shared_ptr<const PrettyPrinter> printer);

  const WorkflowPass::Run* workflow(std::string_view name) const;
  const EditorAction* editor_action(std::string_view id) const;
  const NavigatorAction* navigator_action(std::string_view id) const;

  struct PrinterEntry {
    std::string fragment;
    std::shared_ptr<const PrettyPrinter> printer;
  };
  const PrinterEntry* printer(std::string_view name) const;

 private:
  std::map<std::string, WorkflowPass::Run, std::less<>> workflows_;
  std::map<std::string, EditorAction, std::less<>> editorActions_;
  std::map<std::string, NavigatorAction, std::less<>> navigatorActions_;
  std::map<std::string, PrinterEntry, std::less<>> printers_;
};

ActionResult run_editor_action(std::string_view actionId, const EditorActionRequest& request,
                               const ComponentRegistry& registry, const ActionEnvironment& env);

ActionResult run_navigator_action(std::string_view actionId,
                                  const std::map<std::string, std::string>& filesToProjects,
                                  const ComponentRegistry& registry, const ActionEnvironment& env);

}  // namespace fragmentc
