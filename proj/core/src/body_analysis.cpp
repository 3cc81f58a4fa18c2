#include "body_analysis.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace fragmentc::detail {

namespace {

struct Occurrence {
  int count = 0;  // 2 stands for "many"
  bool required = false;
  bool flag = false;
  bool value = false;
  int order = 0;
};

using OccurrenceMap = std::map<std::string, Occurrence>;

struct Analyzer {
  int next_order = 0;

  void note(OccurrenceMap& out, const std::string& label, bool flag) {
    auto [it, inserted] = out.try_emplace(label);
    if (inserted) it->second.order = next_order++;
    it->second.count = std::min(it->second.count + 1, 2);
    it->second.required = true;
    (flag ? it->second.flag : it->second.value) = true;
  }

  OccurrenceMap visit(const BodyExpr& e) {
    OccurrenceMap out = std::visit([&](const auto& node) { return visit_node(node); }, e.node);
    switch (e.cardinality) {
      case Cardinality::One:
        break;
      case Cardinality::Optional:
        for (auto& [_, o] : out) o.required = false;
        break;
      case Cardinality::Star:
        for (auto& [_, o] : out) {
          o.required = false;
          o.count = 2;
        }
        break;
      case Cardinality::Plus:
        for (auto& [_, o] : out) o.count = 2;
        break;
    }
    return out;
  }

  OccurrenceMap visit_node(const Sequence& s) {
    OccurrenceMap out;
    for (const auto& item : s.items) merge_sequential(out, visit(item));
    return out;
  }

  OccurrenceMap visit_node(const Alternative& a) {
    OccurrenceMap out;
    std::vector<OccurrenceMap> branches;
    for (const auto& b : a.branches) branches.push_back(visit(b));
    for (const auto& branch : branches) {
      for (const auto& [label, o] : branch) {
        auto [it, inserted] = out.try_emplace(label, o);
        if (!inserted) {
          it->second.count = std::max(it->second.count, o.count);
          it->second.flag |= o.flag;
          it->second.value |= o.value;
          it->second.order = std::min(it->second.order, o.order);
        }
      }
    }
    for (auto& [label, o] : out) {
      o.required = std::all_of(branches.begin(), branches.end(), [&](const OccurrenceMap& b) {
        auto it = b.find(label);
        return it != b.end() && it->second.required;
      });
    }
    return out;
  }

  OccurrenceMap visit_node(const Block& b) {
    OccurrenceMap out;
    if (b.label) note(out, *b.label, false);
    merge_sequential(out, visit(*b.inner));
    return out;
  }

  OccurrenceMap visit_node(const Terminal&) { return {}; }

  OccurrenceMap visit_node(const NonterminalRef& r) {
    OccurrenceMap out;
    if (r.label) note(out, *r.label, false);
    return out;
  }

  OccurrenceMap visit_node(const PresenceFlag& f) {
    OccurrenceMap out;
    note(out, f.label, true);
    return out;
  }

  static void merge_sequential(OccurrenceMap& into, const OccurrenceMap& from) {
    for (const auto& [label, o] : from) {
      auto [it, inserted] = into.try_emplace(label, o);
      if (!inserted) {
        it->second.count = 2;
        it->second.required |= o.required;
        it->second.flag |= o.flag;
        it->second.value |= o.value;
        it->second.order = std::min(it->second.order, o.order);
      }
    }
  }
};

}  // namespace

std::vector<LabelInfo> analyze_labels(const BodyExpr& body) {
  Analyzer analyzer;
  OccurrenceMap occurrences = analyzer.visit(body);
  std::vector<std::pair<int, LabelInfo>> ordered;
  for (const auto& [label, o] : occurrences) {
    LabelInfo info;
    info.name = label;
    info.kind = o.flag ? LabelKind::Flag : (o.count >= 2 ? LabelKind::List : LabelKind::Scalar);
    info.required = o.required;
    info.inconsistent = o.flag && o.value;
    ordered.emplace_back(o.order, std::move(info));
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LabelInfo> out;
  for (auto& [_, info] : ordered) out.push_back(std::move(info));
  return out;
}

void for_each_ref(const BodyExpr& body, const std::function<void(const NonterminalRef&)>& fn) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Sequence>) {
          for (const auto& item : node.items) for_each_ref(item, fn);
        } else if constexpr (std::is_same_v<T, Alternative>) {
          for (const auto& branch : node.branches) for_each_ref(branch, fn);
        } else if constexpr (std::is_same_v<T, Block>) {
          for_each_ref(*node.inner, fn);
        } else if constexpr (std::is_same_v<T, NonterminalRef>) {
          fn(node);
        }
      },
      body.node);
}

void for_each_terminal(const BodyExpr& body, const std::function<void(const std::string&)>& fn) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Sequence>) {
          for (const auto& item : node.items) for_each_terminal(item, fn);
        } else if constexpr (std::is_same_v<T, Alternative>) {
          for (const auto& branch : node.branches) for_each_terminal(branch, fn);
        } else if constexpr (std::is_same_v<T, Block>) {
          for_each_terminal(*node.inner, fn);
        } else if constexpr (std::is_same_v<T, Terminal>) {
          fn(node.text);
        } else if constexpr (std::is_same_v<T, PresenceFlag>) {
          fn(node.keyword);
        }
      },
      body.node);
}

void rewrite_refs(BodyExpr& body, const std::function<std::string(const std::string&)>& fn) {
  std::visit(
      [&](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Sequence>) {
          for (auto& item : node.items) rewrite_refs(item, fn);
        } else if constexpr (std::is_same_v<T, Alternative>) {
          for (auto& branch : node.branches) rewrite_refs(branch, fn);
        } else if constexpr (std::is_same_v<T, Block>) {
          rewrite_refs(*node.inner, fn);
        } else if constexpr (std::is_same_v<T, NonterminalRef>) {
          node.target = fn(node.target);
        }
      },
      body.node);
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto c0 = static_cast<unsigned char>(text[0]);
  if (!std::isalpha(c0) && c0 != '_') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace fragmentc::detail
