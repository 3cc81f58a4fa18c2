#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fragmentc {

// ---------------------------------------------------------------------------
// Production bodies

enum class Cardinality { One, Optional, Star, Plus };

struct BodyExpr;

/// Deep-copying owning pointer, used to break the recursion in BodyExpr.
template <class T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

struct Sequence {
  std::vector<BodyExpr> items;
};

struct Alternative {
  std::vector<BodyExpr> branches;
};

/// Parenthesized group; a label makes the matched text a production attribute.
struct Block {
  Box<BodyExpr> inner;
  std::optional<std::string> label;
};

struct Terminal {
  std::string text;
};

struct NonterminalRef {
  std::string target;
  std::optional<std::string> label;
};

/// `label:["kw"]`, a boolean attribute that is true iff the keyword matched.
struct PresenceFlag {
  std::string label;
  std::string keyword;
};

struct BodyExpr {
  std::variant<Sequence, Alternative, Block, Terminal, NonterminalRef, PresenceFlag> node;
  Cardinality cardinality = Cardinality::One;
};

bool operator==(const Sequence& a, const Sequence& b);
bool operator==(const Alternative& a, const Alternative& b);
bool operator==(const Block& a, const Block& b);
bool operator==(const Terminal& a, const Terminal& b);
bool operator==(const NonterminalRef& a, const NonterminalRef& b);
bool operator==(const PresenceFlag& a, const PresenceFlag& b);
bool operator==(const BodyExpr& a, const BodyExpr& b);

// ---------------------------------------------------------------------------
// Grammar fragments

/// Name of the only built-in lexical nonterminal.
inline constexpr std::string_view kIdentToken = "IDENT";

struct Production {
  std::string name;
  std::vector<std::string> implementsList;
  BodyExpr body;
  int line = 0;
};

/// `token NAME = /regex/;` a fragment-local lexical production.
struct TokenDef {
  std::string name;
  std::string pattern;
  int line = 0;
};

struct TemplateItem {
  enum class Kind { Literal, AttributeRef };
  Kind kind = Kind::Literal;
  std::string text;

  friend bool operator==(const TemplateItem&, const TemplateItem&) = default;
};

struct SegmentDef {
  std::string nonterminal;
  std::string iconPath;
  std::vector<TemplateItem> templateItems;
  int line = 0;
};

struct FragmentEditorConcept {
  std::vector<std::string> keywords;
  std::vector<std::string> foldable;
  std::vector<SegmentDef> segments;
  int line = 0;
};

/// A `concept` block other than texteditor, kept verbatim.
struct OpaqueConcept {
  std::string name;
  std::string text;
  int line = 0;
};

struct GrammarFragment {
  std::string name;
  std::vector<std::string> superGrammars;
  std::vector<std::string> interfaces;
  std::vector<std::string> externals;
  std::vector<TokenDef> tokens;
  std::vector<Production> productions;
  std::optional<FragmentEditorConcept> editorConcept;
  std::vector<OpaqueConcept> opaqueConcepts;

  std::string origin;
  int line = 1;

  const Production* find_production(std::string_view name) const;
  bool declares_interface(std::string_view name) const;
  bool declares_external(std::string_view name) const;
  const TokenDef* find_token(std::string_view name) const;
};

// Structural equality: declaration lines and origins are ignored.
bool operator==(const Production& a, const Production& b);
bool operator==(const TokenDef& a, const TokenDef& b);
bool operator==(const SegmentDef& a, const SegmentDef& b);
bool operator==(const FragmentEditorConcept& a, const FragmentEditorConcept& b);
bool operator==(const OpaqueConcept& a, const OpaqueConcept& b);
bool operator==(const GrammarFragment& a, const GrammarFragment& b);

// ---------------------------------------------------------------------------
// Tool configurations

enum class ActionKind { Editor, Navigator };

struct NamedAction {
  std::string displayName;
  std::string actionId;
  ActionKind kind = ActionKind::Editor;

  friend bool operator==(const NamedAction&, const NamedAction&) = default;
};

struct StartBinding {
  std::string qualifiedNonterminal;
  std::string alias;
  int line = 0;
};

struct EmbeddingBinding {
  std::string externalName;
  std::string alias;
  std::string hostPath;
  std::string fillerGrammar;
  std::string fillerNonterminal;
  int line = 0;
};

struct ToolEditorConcept {
  std::string toolClassName;
  std::vector<std::string> workflows;
  std::vector<NamedAction> menuItems;
  std::vector<NamedAction> navigatorItems;
  std::vector<std::string> extensions;
};

struct ToolConfig {
  std::string rootFactoryName;
  std::string rootTypeName;
  StartBinding startBinding;
  std::vector<EmbeddingBinding> embeddings;
  std::vector<std::string> prettyPrinters;
  ToolEditorConcept editor;
  std::string origin;
};

/// `a.b.c.G.N` split into grammar `a.b.c.G` and nonterminal `N`.
struct QualifiedNonterminal {
  std::string grammar;
  std::string nonterminal;
};

QualifiedNonterminal split_qualified(std::string_view qualified);

/// Last dot-separated component of a qualified name.
std::string_view simple_name(std::string_view qualified);

}  // namespace fragmentc
