#include "fragmentc/syntax_tree.hpp"

#include "fragmentc/grammar.hpp"

namespace fragmentc {

std::string_view SyntaxNode::local_name() const { return simple_name(production); }

bool SyntaxNode::has(std::string_view label) const {
  return attributes.find(std::string(label)) != attributes.end();
}

std::optional<std::string> SyntaxNode::text(std::string_view label) const {
  auto it = attributes.find(std::string(label));
  if (it == attributes.end()) return std::nullopt;
  const auto* scalar = std::get_if<AttrScalar>(&it->second);
  if (!scalar) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(scalar)) return *s;
  return std::nullopt;
}

bool SyntaxNode::flag(std::string_view label) const {
  auto it = attributes.find(std::string(label));
  if (it == attributes.end()) return false;
  const auto* scalar = std::get_if<AttrScalar>(&it->second);
  if (!scalar) return false;
  const auto* b = std::get_if<bool>(scalar);
  return b && *b;
}

const SyntaxNode* SyntaxNode::node(std::string_view label) const {
  auto it = attributes.find(std::string(label));
  if (it == attributes.end()) return nullptr;
  const auto* scalar = std::get_if<AttrScalar>(&it->second);
  if (!scalar) return nullptr;
  const auto* ref = std::get_if<ChildRef>(scalar);
  return ref ? child(*ref) : nullptr;
}

std::vector<std::string> SyntaxNode::texts(std::string_view label) const {
  std::vector<std::string> out;
  auto it = attributes.find(std::string(label));
  if (it == attributes.end()) return out;
  auto add = [&](const AttrScalar& s) {
    if (const auto* t = std::get_if<std::string>(&s)) out.push_back(*t);
  };
  if (const auto* list = std::get_if<std::vector<AttrScalar>>(&it->second)) {
    for (const auto& s : *list) add(s);
  } else {
    add(std::get<AttrScalar>(it->second));
  }
  return out;
}

std::vector<const SyntaxNode*> SyntaxNode::nodes(std::string_view label) const {
  std::vector<const SyntaxNode*> out;
  auto it = attributes.find(std::string(label));
  if (it == attributes.end()) return out;
  auto add = [&](const AttrScalar& s) {
    if (const auto* r = std::get_if<ChildRef>(&s)) {
      if (const auto* n = child(*r)) out.push_back(n);
    }
  };
  if (const auto* list = std::get_if<std::vector<AttrScalar>>(&it->second)) {
    for (const auto& s : *list) add(s);
  } else {
    add(std::get<AttrScalar>(it->second));
  }
  return out;
}

std::string SyntaxNode::leaf_text() const {
  std::string out;
  for (const auto& item : layout) {
    std::string piece;
    if (const auto* leaf = std::get_if<Leaf>(&item)) {
      piece = leaf->text;
    } else if (const auto* c = child(std::get<ChildRef>(item))) {
      piece = c->leaf_text();
    }
    if (piece.empty()) continue;
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

bool structurally_equal(const SyntaxNode& a, const SyntaxNode& b) {
  if (a.production != b.production || a.attributes != b.attributes ||
      a.children.size() != b.children.size() || a.layout.size() != b.layout.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.layout.size(); ++i) {
    const auto& x = a.layout[i];
    const auto& y = b.layout[i];
    if (x.index() != y.index()) return false;
    if (const auto* lx = std::get_if<Leaf>(&x)) {
      if (lx->text != std::get<Leaf>(y).text) return false;
    } else if (std::get<ChildRef>(x) != std::get<ChildRef>(y)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

}  // namespace fragmentc
