#include "fragmentc/grammar.hpp"

#include <algorithm>

namespace fragmentc {

bool operator==(const Sequence& a, const Sequence& b) { return a.items == b.items; }
bool operator==(const Alternative& a, const Alternative& b) { return a.branches == b.branches; }
bool operator==(const Block& a, const Block& b) { return *a.inner == *b.inner && a.label == b.label; }
bool operator==(const Terminal& a, const Terminal& b) { return a.text == b.text; }
bool operator==(const NonterminalRef& a, const NonterminalRef& b) {
  return a.target == b.target && a.label == b.label;
}
bool operator==(const PresenceFlag& a, const PresenceFlag& b) {
  return a.label == b.label && a.keyword == b.keyword;
}
bool operator==(const BodyExpr& a, const BodyExpr& b) {
  return a.cardinality == b.cardinality && a.node == b.node;
}

bool operator==(const Production& a, const Production& b) {
  return a.name == b.name && a.implementsList == b.implementsList && a.body == b.body;
}
bool operator==(const TokenDef& a, const TokenDef& b) {
  return a.name == b.name && a.pattern == b.pattern;
}
bool operator==(const SegmentDef& a, const SegmentDef& b) {
  return a.nonterminal == b.nonterminal && a.iconPath == b.iconPath &&
         a.templateItems == b.templateItems;
}
bool operator==(const FragmentEditorConcept& a, const FragmentEditorConcept& b) {
  return a.keywords == b.keywords && a.foldable == b.foldable && a.segments == b.segments;
}
bool operator==(const OpaqueConcept& a, const OpaqueConcept& b) {
  return a.name == b.name && a.text == b.text;
}
bool operator==(const GrammarFragment& a, const GrammarFragment& b) {
  return a.name == b.name && a.superGrammars == b.superGrammars &&
         a.interfaces == b.interfaces && a.externals == b.externals && a.tokens == b.tokens &&
         a.productions == b.productions && a.editorConcept == b.editorConcept &&
         a.opaqueConcepts == b.opaqueConcepts;
}

const Production* GrammarFragment::find_production(std::string_view n) const {
  auto it = std::find_if(productions.begin(), productions.end(),
                         [&](const Production& p) { return p.name == n; });
  return it == productions.end() ? nullptr : &*it;
}

bool GrammarFragment::declares_interface(std::string_view n) const {
  return std::find(interfaces.begin(), interfaces.end(), n) != interfaces.end();
}

bool GrammarFragment::declares_external(std::string_view n) const {
  return std::find(externals.begin(), externals.end(), n) != externals.end();
}

const TokenDef* GrammarFragment::find_token(std::string_view n) const {
  auto it = std::find_if(tokens.begin(), tokens.end(), [&](const TokenDef& t) { return t.name == n; });
  return it == tokens.end() ? nullptr : &*it;
}

QualifiedNonterminal split_qualified(std::string_view qualified) {
  auto dot = qualified.rfind('.');
  if (dot == std::string_view::npos) return {"", std::string(qualified)};
  return {std::string(qualified.substr(0, dot)), std::string(qualified.substr(dot + 1))};
}

std::string_view simple_name(std::string_view qualified) {
  auto dot = qualified.rfind('.');
  return dot == std::string_view::npos ? qualified : qualified.substr(dot + 1);
}

}  // namespace fragmentc
