#include "fragmentc/language_service.hpp"

#include "fragmentc/grammar_loader.hpp"

namespace fragmentc {

struct LanguageService::State {
  State(ComposedLanguage lang, ParserEngine eng, ComponentRegistry reg)
      : language(std::move(lang)), engine(std::move(eng)), registry(std::move(reg)), printers(language) {}

  ComposedLanguage language;
  ParserEngine engine;
  ComponentRegistry registry;
  PrinterChain printers;
  std::vector<WorkflowPass> passes;
};

namespace {

constexpr const char* kServiceSource = "service";

const NamedAction* find_action(const std::vector<NamedAction>& items, std::string_view id) {
  for (const auto& a : items) {
    if (a.actionId == id || a.displayName == id) return &a;
  }
  return nullptr;
}

}  // namespace

Result<LanguageService> LanguageService::create(ComposedLanguage language, const ComponentRegistry& registry) {
  auto engine = ParserEngine::build(language);
  if (!engine) return Result<LanguageService>::failure(engine.problems());
  std::vector<ProblemReport> warnings = engine.problems();

  auto state = std::make_shared<State>(std::move(language), std::move(engine).value(), registry);
  const auto& lang = state->language;
  for (const auto& name : lang.effectiveEditor.workflows) {
    if (const auto* run = registry.workflow(name)) {
      state->passes.push_back({name, *run});
    } else {
      warnings.push_back(make_warning("unknown workflow " + name, "", 1, 1, kServiceSource));
    }
  }
  for (const auto& name : lang.prettyPrinters) {
    if (const auto* p = registry.printer(name)) {
      state->printers.add(p->fragment, p->printer);
    } else {
      warnings.push_back(make_warning("unknown pretty printer " + name + "; the default printer is used", "", 1,
                                      1, kServiceSource));
    }
  }
  for (const auto& a : lang.effectiveEditor.menuItems) {
    if (!registry.editor_action(a.actionId)) {
      warnings.push_back(make_warning("no editor action registered as " + a.actionId, "", 1, 1, kServiceSource));
    }
  }
  for (const auto& a : lang.effectiveEditor.navigatorItems) {
    if (!registry.navigator_action(a.actionId)) {
      warnings.push_back(
          make_warning("no navigator action registered as " + a.actionId, "", 1, 1, kServiceSource));
    }
  }
  return Result<LanguageService>(LanguageService(std::move(state)), std::move(warnings));
}

LanguageService::Analysis LanguageService::analyze(std::string_view text, std::string_view file,
                                                   const DocumentLookup& workspace) const {
  const auto& s = *state_;
  Analysis a;
  a.outcome = s.engine.parse(text, file);
  const auto& cfg = s.language.effectiveEditor;
  a.features.highlights = highlight(a.outcome.tokens);
  if (a.outcome.root) {
    a.features.folds = folding_ranges(*a.outcome.root, cfg, text);
    a.features.outline = outline(*a.outcome.root, cfg, text);
  }
  a.features.diagnostics = diagnostics(a.outcome, s.passes, file, workspace);
  a.features.actions = cfg.menuItems;
  a.features.actions.insert(a.features.actions.end(), cfg.navigatorItems.begin(), cfg.navigatorItems.end());
  a.features.formatAvailable = cfg.formatAvailable;
  return a;
}

Result<std::string> LanguageService::format(std::string_view text, std::string_view file) const {
  const auto& s = *state_;
  if (!s.language.effectiveEditor.formatAvailable) {
    return Result<std::string>::failure(make_error("no pretty printer is configured for " + s.language.name,
                                                   std::string(file), 1, 1, kServiceSource));
  }
  auto outcome = s.engine.parse(text, file);
  if (!outcome.root) return Result<std::string>::failure(outcome.problems);
  return Result<std::string>(fragmentc::format(*outcome.root, outcome.tokens, s.printers, s.engine.lexer()));
}

ActionResult LanguageService::editor_action(std::string_view id, const EditorActionRequest& request,
                                            const DocumentLookup& workspace) const {
  const auto& s = *state_;
  const auto* item = find_action(s.language.effectiveEditor.menuItems, id);
  if (!item) return ActionResult::error("unknown action " + std::string(id), request.path);
  ActionEnvironment env{&s.engine, &s.printers, workspace};
  return run_editor_action(item->actionId, request, s.registry, env);
}

ActionResult LanguageService::navigator_action(std::string_view id,
                                               const std::map<std::string, std::string>& filesToProjects,
                                               const DocumentLookup& workspace) const {
  const auto& s = *state_;
  const auto* item = find_action(s.language.effectiveEditor.navigatorItems, id);
  if (!item) return ActionResult::error("unknown action " + std::string(id));
  ActionEnvironment env{&s.engine, &s.printers, workspace};
  return run_navigator_action(item->actionId, filesToProjects, s.registry, env);
}

const ComposedLanguage& LanguageService::language() const { return state_->language; }
const ParserEngine& LanguageService::engine() const { return state_->engine; }
const PrinterChain& LanguageService::printers() const { return state_->printers; }
const std::vector<WorkflowPass>& LanguageService::passes() const { return state_->passes; }

Result<LanguageService> open_tool(const std::filesystem::path& configPath,
                                  const std::vector<std::filesystem::path>& roots,
                                  const ComponentRegistry& registry) {
  auto config = load_tool_config(configPath);
  if (!config) return Result<LanguageService>::failure(config.problems());
  GrammarLoader loader(roots);
  auto composed = compose(config.value(), loader.lookup());
  if (!composed) return Result<LanguageService>::failure(composed.problems());
  auto service = LanguageService::create(std::move(composed).value(), registry);
  if (!service) return service;
  std::vector<ProblemReport> warnings = config.problems();
  warnings.insert(warnings.end(), composed.problems().begin(), composed.problems().end());
  warnings.insert(warnings.end(), service.problems().begin(), service.problems().end());
  return Result<LanguageService>(std::move(service).value(), std::move(warnings));
}

}  // namespace fragmentc
