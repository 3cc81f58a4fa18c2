#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/composer.hpp"
#include "fragmentc/editor_services.hpp"
#include "fragmentc/parse_engine.hpp"
#include "fragmentc/pretty_printer.hpp"

namespace fragmentc {

/// A composed language wired to its engine, printers, workflows and actions.
/// Immutable after creation and cheap to copy.
class LanguageService {
 public:
  /// Unknown workflow, printer or action names are reported as warnings.
  static Result<LanguageService> create(ComposedLanguage language, const ComponentRegistry& registry);

  struct Analysis {
    ParseOutcome outcome;
    EditorFeatureSet features;
  };

  /// Parses `text` and computes every editor feature for it.
  Analysis analyze(std::string_view text, std::string_view file, const DocumentLookup& workspace = {}) const;

  /// Fails when the document has errors or no printer is configured.
  Result<std::string> format(std::string_view text, std::string_view file) const;

  /// `id` is the action id or the display name of a menu item.
  ActionResult editor_action(std::string_view id, const EditorActionRequest& request,
                             const DocumentLookup& workspace = {}) const;
  ActionResult navigator_action(std::string_view id, const std::map<std::string, std::string>& filesToProjects,
                                const DocumentLookup& workspace = {}) const;

  const ComposedLanguage& language() const;
  const ParserEngine& engine() const;
  const PrinterChain& printers() const;
  const std::vector<WorkflowPass>& passes() const;

 private:
  struct State;
  explicit LanguageService(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;
};

/// Reads a tool configuration, composes its language from grammars on
/// `roots` and wires it to `registry`.
Result<LanguageService> open_tool(const std::filesystem::path& configPath,
                                  const std::vector<std::filesystem::path>& roots,
                                  const ComponentRegistry& registry);

}  // namespace fragmentc
