#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fragmentc/source.hpp"

namespace fragmentc {

/// Index of a node in its parent's `children`.
struct ChildRef {
  std::size_t index = 0;
  friend bool operator==(const ChildRef&, const ChildRef&) = default;
};

using AttrScalar = std::variant<std::string, bool, ChildRef>;
using AttrValue = std::variant<AttrScalar, std::vector<AttrScalar>>;

/// A consumed token, kept so printers can reproduce the node.
struct Leaf {
  std::string text;
  /// Index into ParseOutcome::tokens.
  std::size_t token = 0;
};

using LayoutItem = std::variant<Leaf, ChildRef>;

/// Runtime-typed syntax tree node. Labeled elements of the production body
/// become `attributes`; every sub-node (labeled or not) is a child.
struct SyntaxNode {
  std::string production;
  std::string fragment;
  std::map<std::string, AttrValue> attributes;
  std::vector<SyntaxNode> children;
  /// Leaves and children interleaved in source order.
  std::vector<LayoutItem> layout;
  Span span;

  /// Unqualified production name.
  std::string_view local_name() const;

  bool has(std::string_view label) const;
  /// Scalar text attribute, or nullopt when absent or not text.
  std::optional<std::string> text(std::string_view label) const;
  bool flag(std::string_view label) const;
  /// Scalar node attribute.
  const SyntaxNode* node(std::string_view label) const;
  /// List attribute items rendered as text (nodes are skipped).
  std::vector<std::string> texts(std::string_view label) const;
  /// List attribute items that are nodes.
  std::vector<const SyntaxNode*> nodes(std::string_view label) const;

  const SyntaxNode* child(const ChildRef& ref) const {
    return ref.index < children.size() ? &children[ref.index] : nullptr;
  }

  /// Concatenation of the texts of all leaves below this node, separated by
  /// single spaces.
  std::string leaf_text() const;
};

/// Equality that ignores spans and token indices: same productions, same
/// attributes, same children and the same consumed token texts.
bool structurally_equal(const SyntaxNode& a, const SyntaxNode& b);

/// Depth-first pre-order visit.
template <class F>
void walk(const SyntaxNode& node, F&& fn) {
  fn(node);
  for (const auto& c : node.children) walk(c, fn);
}

}  // namespace fragmentc
