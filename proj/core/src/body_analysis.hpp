#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fragmentc/grammar.hpp"

namespace fragmentc::detail {

enum class LabelKind { Scalar, List, Flag };

/// How a label surfaces as a production attribute.
struct LabelInfo {
  std::string name;
  LabelKind kind = LabelKind::Scalar;
  /// Present on every successful match of the production.
  bool required = true;
  /// Used both as a presence flag and as a value somewhere in the body.
  bool inconsistent = false;
};

/// Labels of a body in first-occurrence order.
std::vector<LabelInfo> analyze_labels(const BodyExpr& body);

void for_each_ref(const BodyExpr& body, const std::function<void(const NonterminalRef&)>& fn);
void for_each_terminal(const BodyExpr& body, const std::function<void(const std::string&)>& fn);

/// Applies `fn` to every NonterminalRef target in place.
void rewrite_refs(BodyExpr& body, const std::function<std::string(const std::string&)>& fn);

bool is_identifier(std::string_view text);

}  // namespace fragmentc::detail
