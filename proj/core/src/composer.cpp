#include "fragmentc/composer.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "body_analysis.hpp"
#include "fragmentc/grammar_frontend.hpp"

namespace fragmentc {

namespace {

constexpr std::string_view kComposerSource = "composer";

ProblemReport composer_error(const std::string& file, int line, std::string message) {
  return make_error(std::move(message), file, std::max(line, 1), 1, std::string(kComposerSource));
}

template <class T>
void append_unique(std::vector<T>& into, const T& value) {
  if (std::find(into.begin(), into.end(), value) == into.end()) into.push_back(value);
}

// Which supergrammar contributed an inherited definition.
template <class T>
struct Inherited {
  T value;
  std::string from;
};

class Flattener {
 public:
  Flattener(const FragmentLookup& lookup, bool validate) : lookup_(lookup), validate_(validate) {}

  Result<GrammarFragment> flatten(const GrammarFragment& f) {
    std::vector<ProblemReport> problems;
    auto out = flatten(f, problems);
    if (!out || has_errors(problems)) return Result<GrammarFragment>::failure(std::move(problems));
    return Result<GrammarFragment>(std::move(*out), std::move(problems));
  }

 private:
  std::optional<GrammarFragment> flatten(const GrammarFragment& f,
                                         std::vector<ProblemReport>& problems) {
    if (std::find(stack_.begin(), stack_.end(), f.name) != stack_.end()) {
      std::string cycle;
      bool in_cycle = false;
      for (const auto& n : stack_) {
        if (n == f.name) in_cycle = true;
        if (in_cycle) cycle += n + " -> ";
      }
      problems.push_back(composer_error(f.origin, f.line, "inheritance cycle: " + cycle + f.name));
      return std::nullopt;
    }
    if (f.superGrammars.empty()) {
      if (validate_) append(problems, validate_fragment(f, {}));
      return f;
    }

    stack_.push_back(f.name);
    std::vector<GrammarFragment> supers;
    bool ok = true;
    for (const auto& super_name : f.superGrammars) {
      auto raw = lookup_(super_name);
      if (!raw) {
        problems.push_back(composer_error(f.origin, f.line, "unknown supergrammar " + super_name));
        append(problems, raw.problems());
        ok = false;
        continue;
      }
      auto flat = flatten(raw.value(), problems);
      if (!flat) {
        ok = false;
        continue;
      }
      supers.push_back(std::move(*flat));
    }
    stack_.pop_back();
    if (!ok) return std::nullopt;
    if (validate_) append(problems, validate_fragment(f, supers));
    return merge(f, supers, problems);
  }

  static void append(std::vector<ProblemReport>& into, const std::vector<ProblemReport>& from) {
    into.insert(into.end(), from.begin(), from.end());
  }

  std::optional<GrammarFragment> merge(const GrammarFragment& f,
                                       const std::vector<GrammarFragment>& supers,
                                       std::vector<ProblemReport>& problems) {
    bool conflict = false;

    // Productions: inherited definitions in supergrammar order, overridden in
    // place by local ones, then the new local productions.
    std::vector<Inherited<Production>> inherited;
    for (const auto& s : supers) {
      for (const auto& p : s.productions) {
        auto it = std::find_if(inherited.begin(), inherited.end(),
                               [&](const auto& i) { return i.value.name == p.name; });
        if (it == inherited.end()) {
          inherited.push_back({p, s.name});
        } else if (!(it->value == p) && !f.find_production(p.name)) {
          problems.push_back(composer_error(
              f.origin, f.line,
              "conflicting definitions of production " + p.name + " inherited from " + it->from +
                  " and " + s.name + "; override it in " + f.name));
          conflict = true;
        }
      }
    }

    GrammarFragment out = f;
    out.productions.clear();
    for (const auto& i : inherited) {
      const Production* local = f.find_production(i.value.name);
      out.productions.push_back(local ? *local : i.value);
    }
    for (const auto& p : f.productions) {
      if (!std::any_of(inherited.begin(), inherited.end(),
                       [&](const auto& i) { return i.value.name == p.name; })) {
        out.productions.push_back(p);
      }
    }

    out.interfaces.clear();
    out.externals.clear();
    out.tokens.clear();
    for (const auto& s : supers) {
      for (const auto& i : s.interfaces) append_unique(out.interfaces, i);
      for (const auto& e : s.externals) append_unique(out.externals, e);
      for (const auto& t : s.tokens) {
        if (!out.find_token(t.name) && !f.find_token(t.name)) out.tokens.push_back(t);
      }
    }
    for (const auto& i : f.interfaces) append_unique(out.interfaces, i);
    for (const auto& e : f.externals) append_unique(out.externals, e);
    for (const auto& t : f.tokens) {
      auto it = std::find_if(out.tokens.begin(), out.tokens.end(),
                             [&](const TokenDef& d) { return d.name == t.name; });
      if (it != out.tokens.end()) {
        *it = t;
      } else {
        out.tokens.push_back(t);
      }
    }
    // A production in the subgrammar fills an inherited hole of the same name.
    std::erase_if(out.externals, [&](const std::string& e) { return out.find_production(e); });

    out.editorConcept = merge_concepts(f, supers, problems, conflict);
    if (conflict) return std::nullopt;
    return out;
  }

  std::optional<FragmentEditorConcept> merge_concepts(const GrammarFragment& f,
                                                      const std::vector<GrammarFragment>& supers,
                                                      std::vector<ProblemReport>& problems,
                                                      bool& conflict) {
    bool any = f.editorConcept.has_value();
    FragmentEditorConcept merged;
    std::vector<Inherited<SegmentDef>> segments;
    for (const auto& s : supers) {
      if (!s.editorConcept) continue;
      any = true;
      for (const auto& k : s.editorConcept->keywords) append_unique(merged.keywords, k);
      for (const auto& n : s.editorConcept->foldable) append_unique(merged.foldable, n);
      for (const auto& seg : s.editorConcept->segments) {
        auto it = std::find_if(segments.begin(), segments.end(), [&](const auto& i) {
          return i.value.nonterminal == seg.nonterminal;
        });
        if (it == segments.end()) {
          segments.push_back({seg, s.name});
          continue;
        }
        bool overridden = f.editorConcept &&
                          std::any_of(f.editorConcept->segments.begin(),
                                      f.editorConcept->segments.end(), [&](const SegmentDef& d) {
                                        return d.nonterminal == seg.nonterminal;
                                      });
        if (!(it->value == seg) && !overridden) {
          problems.push_back(composer_error(
              f.origin, f.line,
              "conflicting segments for " + seg.nonterminal + " inherited from " + it->from +
                  " and " + s.name + "; redefine the segment in " + f.name));
          conflict = true;
        }
      }
    }
    if (!any) return std::nullopt;
    for (auto& i : segments) merged.segments.push_back(std::move(i.value));
    if (f.editorConcept) {
      merged.line = f.editorConcept->line;
      for (const auto& k : f.editorConcept->keywords) append_unique(merged.keywords, k);
      for (const auto& n : f.editorConcept->foldable) append_unique(merged.foldable, n);
      for (const auto& seg : f.editorConcept->segments) {
        auto it = std::find_if(merged.segments.begin(), merged.segments.end(),
                               [&](const SegmentDef& d) { return d.nonterminal == seg.nonterminal; });
        if (it != merged.segments.end()) {
          *it = seg;
        } else {
          merged.segments.push_back(seg);
        }
      }
    }
    return merged;
  }

  const FragmentLookup& lookup_;
  bool validate_;
  std::vector<std::string> stack_;
};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::vector<std::string> lineage_of(const GrammarFragment& f, const FragmentLookup& lookup,
                                    int depth = 0) {
  std::vector<std::string> out;
  if (depth > 64) return out;
  for (const auto& s : f.superGrammars) append_unique(out, std::string(simple_name(s)));
  for (const auto& s : f.superGrammars) {
    auto super = lookup(s);
    if (!super) continue;
    for (auto& n : lineage_of(super.value(), lookup, depth + 1)) append_unique(out, n);
  }
  return out;
}

class Binder {
 public:
  Binder(const GrammarFragment& host, const ToolConfig& config, const FragmentLookup& lookup)
      : host_(host), config_(config), lookup_(lookup) {}

  Result<ComposedLanguage> run() {
    check_start();
    bind_all();
    if (has_errors(problems_)) return Result<ComposedLanguage>::failure(std::move(problems_));

    std::vector<const GrammarFragment*> parts{&host_};
    for (const auto& f : fillers_) parts.push_back(&f);

    std::set<std::string> names;
    for (const auto* f : parts) {
      if (!names.insert(f->name).second) {
        error(config_.startBinding.line, "two composed fragments share the name " + f->name);
      }
    }
    if (has_errors(problems_)) return Result<ComposedLanguage>::failure(std::move(problems_));

    for (const auto* f : parts) import_fragment(*f);
    check_interfaces();
    if (has_errors(problems_)) return Result<ComposedLanguage>::failure(std::move(problems_));

    std::vector<EditorContribution> contributions;
    for (const auto* f : parts) {
      if (f->editorConcept) contributions.push_back({f->name, *f->editorConcept});
    }
    lang_.effectiveEditor =
        merge_editor_concepts(contributions, config_.editor, config_.prettyPrinters);
    lang_.prettyPrinters = config_.prettyPrinters;
    lang_.extensions = config_.editor.extensions;
    return Result<ComposedLanguage>(std::move(lang_), std::move(problems_));
  }

 private:
  void error(int line, std::string message) {
    problems_.push_back(composer_error(config_.origin, line, std::move(message)));
  }

  void check_start() {
    auto start = split_qualified(config_.startBinding.qualifiedNonterminal);
    if (!start.grammar.empty() && simple_name(start.grammar) != host_.name) {
      error(config_.startBinding.line, "start symbol " + config_.startBinding.qualifiedNonterminal +
                                           " does not belong to host grammar " + host_.name);
    }
    if (!host_.find_production(start.nonterminal)) {
      error(config_.startBinding.line,
            "start symbol " + start.nonterminal + " is not a production of " + host_.name);
    }
    lang_.name = host_.name;
    lang_.startSymbol = host_.name + "." + start.nonterminal;
  }

  const GrammarFragment* filler(const std::string& grammar, int line) {
    std::string simple(simple_name(grammar));
    for (const auto& f : fillers_) {
      if (f.name == simple) return &f;
    }
    auto loaded = lookup_(grammar);
    if (!loaded) {
      error(line, "cannot load filler grammar " + grammar);
      problems_.insert(problems_.end(), loaded.problems().begin(), loaded.problems().end());
      return nullptr;
    }
    fillers_.push_back(std::move(loaded.value()));
    return &fillers_.back();
  }

  void bind_all() {
    // Fillers are stored in a vector that grows; reserve so pointers stay valid.
    fillers_.reserve(config_.embeddings.size());
    for (const auto& b : config_.embeddings) {
      std::string external;
      if (host_.declares_external(b.externalName)) {
        external = b.externalName;
      } else {
        std::vector<std::string> matches;
        for (const auto& e : host_.externals) {
          if (iequals(e, b.externalName)) matches.push_back(e);
        }
        if (matches.size() == 1) external = matches.front();
      }
      if (external.empty()) {
        error(b.line, "binding names undeclared external " + b.externalName + " of " + host_.name);
        continue;
      }
      if (bindings_.count(external)) {
        error(b.line, "external " + external + " is bound twice");
        continue;
      }
      const GrammarFragment* f = filler(b.fillerGrammar, b.line);
      if (!f) continue;
      if (!f->find_production(b.fillerNonterminal) && !f->declares_interface(b.fillerNonterminal)) {
        error(b.line, "filler nonterminal " + b.fillerGrammar + "." + b.fillerNonterminal +
                          " not found");
        continue;
      }
      bindings_[external] = f->name + "." + b.fillerNonterminal;
    }
    for (const auto& e : host_.externals) {
      if (!bindings_.count(e)) error(config_.startBinding.line, "unbound external " + e);
    }
    for (const auto& f : fillers_) {
      for (const auto& e : f.externals) {
        error(config_.startBinding.line, "unbound external " + e + " of filler grammar " + f.name);
      }
    }
  }

  void import_fragment(const GrammarFragment& f) {
    FragmentInfo info;
    info.name = f.name;
    info.lineage = lineage_of(f, lookup_);
    if (f.editorConcept) info.keywords.insert(f.editorConcept->keywords.begin(), f.editorConcept->keywords.end());
    for (auto it = info.lineage.rbegin(); it != info.lineage.rend(); ++it) {
      append_unique(lang_.sourceFragments, *it);
    }
    append_unique(lang_.sourceFragments, f.name);
    lang_.fragments.push_back(std::move(info));

    auto qualify = [&](const std::string& target) -> std::string {
      if (target == kIdentToken) return target;
      if (f.declares_external(target)) {
        auto it = bindings_.find(target);
        return it != bindings_.end() ? it->second : target;
      }
      return f.name + "." + target;
    };
    for (const auto& t : f.tokens) {
      TokenDef q = t;
      q.name = f.name + "." + t.name;
      lang_.tokens.emplace(q.name, std::move(q));
    }
    for (const auto& i : f.interfaces) lang_.interfaceImpls[f.name + "." + i];
    for (const auto& p : f.productions) {
      ComposedProduction cp;
      cp.name = f.name + "." + p.name;
      cp.fragment = f.name;
      cp.body = p.body;
      detail::rewrite_refs(cp.body, qualify);
      cp.origin = f.origin;
      cp.line = p.line;
      for (const auto& i : p.implementsList) {
        cp.implementsList.push_back(f.name + "." + i);
        lang_.interfaceImpls[f.name + "." + i].push_back(cp.name);
      }
      lang_.productions.emplace(cp.name, std::move(cp));
    }
  }

  void check_interfaces() {
    for (const auto& [name, p] : lang_.productions) {
      detail::for_each_ref(p.body, [&](const NonterminalRef& ref) {
        auto it = lang_.interfaceImpls.find(ref.target);
        if (it != lang_.interfaceImpls.end() && it->second.empty() && reported_.insert(ref.target).second) {
          error(p.line, "interface " + ref.target + " has no implementing production");
        }
      });
    }
  }

  const GrammarFragment& host_;
  const ToolConfig& config_;
  const FragmentLookup& lookup_;
  std::vector<GrammarFragment> fillers_;
  std::map<std::string, std::string> bindings_;
  std::set<std::string> reported_;
  ComposedLanguage lang_;
  std::vector<ProblemReport> problems_;
};

}  // namespace

bool operator==(const ComposedProduction& a, const ComposedProduction& b) {
  return a.name == b.name && a.fragment == b.fragment && a.implementsList == b.implementsList &&
         a.body == b.body;
}

const FragmentInfo* ComposedLanguage::find_fragment(std::string_view fragment) const {
  auto it = std::find_if(fragments.begin(), fragments.end(),
                         [&](const FragmentInfo& f) { return f.name == fragment; });
  return it == fragments.end() ? nullptr : &*it;
}

Result<GrammarFragment> resolve_inheritance(const GrammarFragment& fragment,
                                            const FragmentLookup& lookup) {
  return Flattener(lookup, false).flatten(fragment);
}

Result<ComposedLanguage> bind_embeddings(const GrammarFragment& host, const ToolConfig& config,
                                         const FragmentLookup& lookup) {
  return Binder(host, config, lookup).run();
}

EffectiveEditorConfig merge_editor_concepts(std::span<const EditorContribution> contributions,
                                            const ToolEditorConcept& toolEditor,
                                            std::span<const std::string> prettyPrinters) {
  EffectiveEditorConfig out;
  for (const auto& c : contributions) {
    out.keywords.insert(c.concept_def.keywords.begin(), c.concept_def.keywords.end());
    for (const auto& n : c.concept_def.foldable) out.foldable.insert(c.fragmentName + "." + n);
    for (const auto& seg : c.concept_def.segments) {
      out.segments.insert_or_assign(c.fragmentName + "." + seg.nonterminal, seg);
    }
  }
  out.workflows = toolEditor.workflows;
  out.menuItems = toolEditor.menuItems;
  out.navigatorItems = toolEditor.navigatorItems;
  out.toolClassName = toolEditor.toolClassName;
  out.formatAvailable = !prettyPrinters.empty();
  return out;
}

Result<ComposedLanguage> compose(const ToolConfig& config, const FragmentLookup& lookup) {
  std::map<std::string, Result<GrammarFragment>> cache;
  FragmentLookup flat_lookup = [&](std::string_view name) -> Result<GrammarFragment> {
    std::string key(name);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto raw = lookup(name);
    Result<GrammarFragment> flat =
        raw ? Flattener(lookup, true).flatten(raw.value()) : Result<GrammarFragment>::failure(raw.problems());
    if (raw && flat) {
      // Warnings from parsing (e.g. opaque concepts) travel with the result.
      flat.problems().insert(flat.problems().begin(), raw.problems().begin(), raw.problems().end());
    }
    cache.emplace(key, flat);
    return flat;
  };

  auto start = split_qualified(config.startBinding.qualifiedNonterminal);
  if (start.grammar.empty()) {
    return Result<ComposedLanguage>::failure(
        composer_error(config.origin, config.startBinding.line,
                       "start symbol " + start.nonterminal + " must be qualified as Grammar.Nonterminal"));
  }
  auto host = flat_lookup(start.grammar);
  if (!host) return Result<ComposedLanguage>::failure(host.problems());

  std::vector<ProblemReport> warnings = host.problems();
  auto composed = bind_embeddings(host.value(), config, flat_lookup);
  if (!composed) return Result<ComposedLanguage>::failure(composed.problems());
  for (const auto& b : config.embeddings) {
    auto it = cache.find(b.fillerGrammar);
    if (it == cache.end() || !it->second) continue;
    for (const auto& w : it->second.problems()) append_unique(warnings, w);
  }
  warnings.insert(warnings.end(), composed.problems().begin(), composed.problems().end());
  return Result<ComposedLanguage>(std::move(composed.value()), std::move(warnings));
}

Result<BundleManifest> bundle_tools(std::span<const BundleEntry> tools) {
  if (tools.empty()) {
    return Result<BundleManifest>::failure(
        make_error("a bundle needs at least one tool", "", 1, 1, std::string(kComposerSource)));
  }
  BundleManifest manifest;
  manifest.version = std::string(kBundleVersion);
  std::map<std::string, std::string> claimed;
  std::vector<ProblemReport> problems;
  for (const auto& entry : tools) {
    const auto& lang = *entry.language;
    std::string origin = entry.config ? entry.config->origin : std::string();
    BundleLanguage bl;
    bl.name = lang.name;
    bl.start = lang.startSymbol;
    bl.fragments = lang.sourceFragments;
    bl.config = origin;
    for (const auto& ext : entry.extensions) {
      auto [it, inserted] = claimed.emplace(ext, lang.name);
      if (!inserted) {
        problems.push_back(make_error("file extension " + ext + " is claimed by both " + it->second +
                                          " and " + lang.name,
                                      origin, 1, 1, std::string(kComposerSource)));
        continue;
      }
      append_unique(bl.extensions, ext);
    }
    manifest.languages.push_back(std::move(bl));
  }
  if (!problems.empty()) return Result<BundleManifest>::failure(std::move(problems));
  return Result<BundleManifest>(std::move(manifest));
}

std::string manifest_to_json(const BundleManifest& manifest) {
  nlohmann::json doc;
  doc["version"] = manifest.version;
  doc["languages"] = nlohmann::json::array();
  for (const auto& l : manifest.languages) {
    nlohmann::json entry{{"name", l.name},
                         {"extensions", l.extensions},
                         {"start", l.start},
                         {"fragments", l.fragments}};
    if (!l.config.empty()) entry["config"] = l.config;
    doc["languages"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

Result<BundleManifest> manifest_from_json(std::string_view text, std::string_view origin) {
  auto fail = [&](const std::string& message) {
    return Result<BundleManifest>::failure(
        make_error(message, std::string(origin), 1, 1, std::string(kComposerSource)));
  };
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return fail("bundle manifest is not a JSON object");
  try {
    BundleManifest m;
    m.version = doc.at("version").get<std::string>();
    for (const auto& l : doc.at("languages")) {
      BundleLanguage bl;
      bl.name = l.at("name").get<std::string>();
      bl.extensions = l.at("extensions").get<std::vector<std::string>>();
      bl.start = l.at("start").get<std::string>();
      bl.fragments = l.at("fragments").get<std::vector<std::string>>();
      if (l.contains("config")) bl.config = l.at("config").get<std::string>();
      m.languages.push_back(std::move(bl));
    }
    return Result<BundleManifest>(std::move(m));
  } catch (const nlohmann::json::exception& e) {
    return fail(std::string("malformed bundle manifest: ") + e.what());
  }
}

}  // namespace fragmentc
