#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/diagnostics.hpp"
#include "fragmentc/grammar.hpp"

namespace fragmentc {

/// Resolves a (possibly qualified) grammar name to a parsed fragment.
/// Must be reentrant; the composer calls it recursively.
using FragmentLookup = std::function<Result<GrammarFragment>(std::string_view)>;

/// One grammar taking part in a composed language, after flattening.
struct FragmentInfo {
  std::string name;
  /// Transitive supergrammars (simple names), nearest first.
  std::vector<std::string> lineage;
  /// Keywords active while lexing inside this fragment's productions.
  std::set<std::string> keywords;

  friend bool operator==(const FragmentInfo&, const FragmentInfo&) = default;
};

/// A production of a composed language. Body references are qualified
/// (`Fragment.Name`), externals are replaced by their filler, and IDENT
/// stays as is.
struct ComposedProduction {
  std::string name;
  std::string fragment;
  std::vector<std::string> implementsList;
  BodyExpr body;
  std::string origin;
  int line = 0;
};

bool operator==(const ComposedProduction& a, const ComposedProduction& b);

struct EffectiveEditorConfig {
  std::set<std::string> keywords;
  /// Qualified nonterminal names.
  std::set<std::string> foldable;
  /// Keyed by qualified nonterminal.
  std::map<std::string, SegmentDef> segments;
  std::vector<std::string> workflows;
  std::vector<NamedAction> menuItems;
  std::vector<NamedAction> navigatorItems;
  bool formatAvailable = false;
  std::string toolClassName;

  friend bool operator==(const EffectiveEditorConfig&, const EffectiveEditorConfig&) = default;
};

struct ComposedLanguage {
  std::string name;
  std::string startSymbol;
  std::map<std::string, ComposedProduction> productions;
  std::map<std::string, TokenDef> tokens;
  std::map<std::string, std::vector<std::string>> interfaceImpls;
  std::vector<FragmentInfo> fragments;
  EffectiveEditorConfig effectiveEditor;
  std::vector<std::string> sourceFragments;
  std::vector<std::string> prettyPrinters;
  std::vector<std::string> extensions;

  const FragmentInfo* find_fragment(std::string_view fragment) const;
  bool is_interface(std::string_view qualified) const {
    return interfaceImpls.count(std::string(qualified)) != 0;
  }

  friend bool operator==(const ComposedLanguage&, const ComposedLanguage&) = default;
};

/// Stage one: copies supergrammar productions, interfaces, externals and
/// editor attributes into `fragment`. Local definitions override inherited
/// ones; conflicting definitions from unrelated supergrammars are errors.
Result<GrammarFragment> resolve_inheritance(const GrammarFragment& fragment,
                                            const FragmentLookup& lookup);

/// Stage two: binds the host's externals to filler nonterminals per the tool
/// configuration and qualifies every production by its fragment. `lookup`
/// must yield flattened, validated fragments.
Result<ComposedLanguage> bind_embeddings(const GrammarFragment& host, const ToolConfig& config,
                                         const FragmentLookup& lookup);

struct EditorContribution {
  std::string fragmentName;
  FragmentEditorConcept concept_def;
};

/// Contributions are ordered host first, then fillers; within a lineage,
/// supergrammars precede subgrammars. Later segments for the same
/// nonterminal replace earlier ones.
EffectiveEditorConfig merge_editor_concepts(std::span<const EditorContribution> contributions,
                                            const ToolEditorConcept& toolEditor,
                                            std::span<const std::string> prettyPrinters);

/// Loads, validates, flattens and binds everything a tool configuration
/// names. `lookup` yields raw (unflattened) fragments.
Result<ComposedLanguage> compose(const ToolConfig& config, const FragmentLookup& lookup);

struct BundleLanguage {
  std::string name;
  std::vector<std::string> extensions;
  std::string start;
  std::vector<std::string> fragments;
  /// Tool configuration the language was composed from, if known.
  std::string config;

  friend bool operator==(const BundleLanguage&, const BundleLanguage&) = default;
};

struct BundleManifest {
  std::string version;
  std::vector<BundleLanguage> languages;

  friend bool operator==(const BundleManifest&, const BundleManifest&) = default;
};

struct BundleEntry {
  const ToolConfig* config = nullptr;
  const ComposedLanguage* language = nullptr;
  std::vector<std::string> extensions;
};

/// Extensions must be disjoint across the bundled languages.
Result<BundleManifest> bundle_tools(std::span<const BundleEntry> tools);

std::string manifest_to_json(const BundleManifest& manifest);
Result<BundleManifest> manifest_from_json(std::string_view text, std::string_view origin);

inline constexpr std::string_view kBundleVersion = "0.1.0";

}  // namespace fragmentc
