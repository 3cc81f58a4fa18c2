#include "fragmentc/parse_engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "body_analysis.hpp"

namespace fragmentc {

namespace detail {

enum class OpKind { Sequence, Choice, Block, Terminal, Ident, Pattern, Rule, Flag };

struct Op {
  OpKind kind = OpKind::Sequence;
  Cardinality card = Cardinality::One;
  std::vector<int> kids;
  int target = -1;
  std::string text;
  int label = -1;
  bool recover = false;
};

struct Rule {
  std::string name;
  std::string fragment;
  bool isInterface = false;
  std::vector<int> implementors;
  int body = -1;
  std::vector<LabelInfo> labels;
  std::string origin;
  int line = 1;
};

struct CompiledGrammar {
  explicit CompiledGrammar(ComposedLanguage lang) : language(std::move(lang)), lexer(language) {}

  ComposedLanguage language;
  Lexer lexer;
  std::vector<Op> ops;
  std::vector<Rule> rules;
  std::map<std::string, int> ruleIndex;
  std::vector<std::set<std::string>> ruleKeywords;
  int start = -1;
};

}  // namespace detail

namespace {

using detail::CompiledGrammar;
using detail::LabelKind;
using detail::Op;
using detail::OpKind;
using detail::Rule;

constexpr std::string_view kEngineSource = "engine";
constexpr std::string_view kParserSource = "parser";

// ---------------------------------------------------------------------------
// Compilation

class Compiler {
 public:
  explicit Compiler(CompiledGrammar& g) : g_(g) {}

  std::vector<ProblemReport> run() {
    const auto& lang = g_.language;
    for (const auto& [name, p] : lang.productions) {
      Rule r;
      r.name = name;
      r.fragment = p.fragment;
      r.labels = detail::analyze_labels(p.body);
      r.origin = p.origin;
      r.line = std::max(p.line, 1);
      g_.ruleIndex[name] = static_cast<int>(g_.rules.size());
      g_.rules.push_back(std::move(r));
    }
    for (const auto& [name, impls] : lang.interfaceImpls) {
      Rule r;
      r.name = name;
      r.fragment = split_qualified(name).grammar;
      r.isInterface = true;
      g_.ruleIndex[name] = static_cast<int>(g_.rules.size());
      g_.rules.push_back(std::move(r));
    }
    for (auto& r : g_.rules) {
      if (!r.isInterface) continue;
      for (const auto& impl : lang.interfaceImpls.at(r.name)) {
        int idx = g_.ruleIndex.at(impl);
        r.implementors.push_back(idx);
        if (r.origin.empty()) {
          r.origin = g_.rules[idx].origin;
          r.line = g_.rules[idx].line;
        }
      }
    }
    for (std::size_t i = 0; i < g_.rules.size(); ++i) {
      if (g_.rules[i].isInterface) continue;
      current_ = static_cast<int>(i);
      const auto& p = lang.productions.at(g_.rules[i].name);
      int body = compile(p.body);
      g_.rules[i].body = body;
    }
    g_.ruleKeywords.resize(g_.rules.size());
    for (std::size_t i = 0; i < g_.rules.size(); ++i) {
      if (const auto* f = lang.find_fragment(g_.rules[i].fragment)) g_.ruleKeywords[i] = f->keywords;
    }
    auto start = g_.ruleIndex.find(lang.startSymbol);
    if (start == g_.ruleIndex.end()) {
      problems_.push_back(make_error("start symbol " + lang.startSymbol + " is not a production", "", 1,
                                     1, std::string(kEngineSource)));
    } else {
      g_.start = start->second;
      mark_recovery(g_.rules[g_.start].body);
    }
    return std::move(problems_);
  }

 private:
  int add(Op op) {
    g_.ops.push_back(std::move(op));
    return static_cast<int>(g_.ops.size()) - 1;
  }

  int label_slot(const std::string& label) const {
    const auto& labels = g_.rules[current_].labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].name == label) return static_cast<int>(i);
    }
    return -1;
  }

  int compile(const BodyExpr& e) {
    Op op;
    op.card = e.cardinality;
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Sequence>) {
            op.kind = OpKind::Sequence;
            for (const auto& item : node.items) op.kids.push_back(compile(item));
          } else if constexpr (std::is_same_v<T, Alternative>) {
            op.kind = OpKind::Choice;
            for (const auto& branch : node.branches) op.kids.push_back(compile(branch));
          } else if constexpr (std::is_same_v<T, Block>) {
            op.kind = OpKind::Block;
            op.kids.push_back(compile(*node.inner));
            if (node.label) op.label = label_slot(*node.label);
          } else if constexpr (std::is_same_v<T, Terminal>) {
            op.kind = OpKind::Terminal;
            op.text = node.text;
          } else if constexpr (std::is_same_v<T, PresenceFlag>) {
            op.kind = OpKind::Flag;
            op.text = node.keyword;
            op.label = label_slot(node.label);
          } else if constexpr (std::is_same_v<T, NonterminalRef>) {
            if (node.label) op.label = label_slot(*node.label);
            op.text = node.target;
            if (node.target == kIdentToken) {
              op.kind = OpKind::Ident;
            } else if (g_.language.tokens.count(node.target)) {
              op.kind = OpKind::Pattern;
            } else if (auto it = g_.ruleIndex.find(node.target); it != g_.ruleIndex.end()) {
              op.kind = OpKind::Rule;
              op.target = it->second;
            } else {
              const auto& r = g_.rules[current_];
              problems_.push_back(make_error("unresolved nonterminal " + node.target + " in production " +
                                                 r.name,
                                             r.origin, r.line, 1, std::string(kEngineSource)));
              op.kind = OpKind::Terminal;
              op.text = "\x01unresolved";
            }
          }
        },
        e.node);
    return add(std::move(op));
  }

  // Repetitions anywhere in the start production's own body resynchronize
  // after an error in recovery mode.
  void mark_recovery(int opi) {
    if (opi < 0) return;
    Op& op = g_.ops[opi];
    if (op.card == Cardinality::Star || op.card == Cardinality::Plus) op.recover = true;
    if (op.kind == OpKind::Sequence || op.kind == OpKind::Choice || op.kind == OpKind::Block) {
      for (int k : op.kids) mark_recovery(k);
    }
  }

  CompiledGrammar& g_;
  int current_ = -1;
  std::vector<ProblemReport> problems_;
};

class GrammarChecks {
 public:
  explicit GrammarChecks(const CompiledGrammar& g) : g_(g) {}

  std::vector<ProblemReport> run() {
    compute_nullable();
    check_left_recursion();
    if (g_.start >= 0) check_reachability();
    return std::move(problems_);
  }

 private:
  bool nullable_op(int opi) const {
    const Op& op = g_.ops[opi];
    if (op.card == Cardinality::Optional || op.card == Cardinality::Star) return true;
    switch (op.kind) {
      case OpKind::Sequence:
        return std::all_of(op.kids.begin(), op.kids.end(), [&](int k) { return nullable_op(k); });
      case OpKind::Choice:
        return std::any_of(op.kids.begin(), op.kids.end(), [&](int k) { return nullable_op(k); });
      case OpKind::Block:
        return nullable_op(op.kids.front());
      case OpKind::Rule:
        return nullable_[op.target];
      default:
        return false;
    }
  }

  void compute_nullable() {
    nullable_.assign(g_.rules.size(), false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < g_.rules.size(); ++i) {
        if (nullable_[i]) continue;
        const Rule& r = g_.rules[i];
        bool n = r.isInterface ? std::any_of(r.implementors.begin(), r.implementors.end(),
                                             [&](int k) { return static_cast<bool>(nullable_[k]); })
                               : nullable_op(r.body);
        if (n) {
          nullable_[i] = true;
          changed = true;
        }
      }
    }
  }

  void left_calls(int opi, std::set<int>& out) const {
    const Op& op = g_.ops[opi];
    switch (op.kind) {
      case OpKind::Sequence:
        for (int k : op.kids) {
          left_calls(k, out);
          if (!nullable_op(k)) break;
        }
        break;
      case OpKind::Choice:
        for (int k : op.kids) left_calls(k, out);
        break;
      case OpKind::Block:
        left_calls(op.kids.front(), out);
        break;
      case OpKind::Rule:
        out.insert(op.target);
        break;
      default:
        break;
    }
  }

  void check_left_recursion() {
    std::vector<std::set<int>> edges(g_.rules.size());
    for (std::size_t i = 0; i < g_.rules.size(); ++i) {
      const Rule& r = g_.rules[i];
      if (r.isInterface) {
        edges[i].insert(r.implementors.begin(), r.implementors.end());
      } else {
        left_calls(r.body, edges[i]);
      }
    }
    std::vector<int> color(g_.rules.size(), 0);
    std::vector<int> stack;
    std::set<int> reported;
    std::function<void(int)> dfs = [&](int v) {
      color[v] = 1;
      stack.push_back(v);
      for (int w : edges[v]) {
        if (color[w] == 1) {
          auto at = std::find(stack.begin(), stack.end(), w);
          // Name the first concrete production on the cycle.
          int named = -1;
          std::string path;
          for (auto it = at; it != stack.end(); ++it) {
            if (named < 0 && !g_.rules[*it].isInterface) named = *it;
            path += g_.rules[*it].name + " -> ";
          }
          path += g_.rules[w].name;
          if (named < 0) named = w;
          if (reported.insert(named).second) {
            const Rule& r = g_.rules[named];
            problems_.push_back(make_error("left recursion in production " + r.name + " (" + path + ")",
                                           r.origin, r.line, 1, std::string(kEngineSource)));
          }
        } else if (color[w] == 0) {
          dfs(w);
        }
      }
      stack.pop_back();
      color[v] = 2;
    };
    for (std::size_t i = 0; i < g_.rules.size(); ++i) {
      if (color[i] == 0) dfs(static_cast<int>(i));
    }
  }

  void all_calls(int opi, std::vector<int>& out) const {
    const Op& op = g_.ops[opi];
    if (op.kind == OpKind::Rule) out.push_back(op.target);
    for (int k : op.kids) all_calls(k, out);
  }

  void check_reachability() {
    std::vector<bool> seen(g_.rules.size(), false);
    std::vector<int> work{g_.start};
    seen[g_.start] = true;
    while (!work.empty()) {
      int v = work.back();
      work.pop_back();
      std::vector<int> next;
      const Rule& r = g_.rules[v];
      if (r.isInterface) {
        next = r.implementors;
      } else {
        all_calls(r.body, next);
      }
      for (int w : next) {
        if (!seen[w]) {
          seen[w] = true;
          work.push_back(w);
        }
      }
    }
    for (std::size_t i = 0; i < g_.rules.size(); ++i) {
      const Rule& r = g_.rules[i];
      if (!seen[i] && !r.isInterface) {
        problems_.push_back(make_warning("production " + r.name + " is unreachable from start symbol " +
                                             g_.language.startSymbol,
                                         r.origin, r.line, 1, std::string(kEngineSource)));
      }
    }
  }

  const CompiledGrammar& g_;
  std::vector<char> nullable_;
  std::vector<ProblemReport> problems_;
};

// ---------------------------------------------------------------------------
// Parsing

struct Failure {
  std::size_t pos = 0;
  bool any = false;
  std::set<std::string> expected;

  void merge(const Failure& other) {
    if (!other.any) return;
    if (!any || other.pos > pos) {
      *this = other;
    } else if (other.pos == pos) {
      expected.insert(other.expected.begin(), other.expected.end());
    }
  }
};

struct MemoEntry {
  bool ok = false;
  std::size_t end = 0;
  std::shared_ptr<const SyntaxNode> node;
  Failure failure;
};

struct Builder {
  std::vector<std::pair<int, AttrScalar>> assigns;
  std::vector<SyntaxNode> children;
  std::vector<LayoutItem> layout;

  struct Mark {
    std::size_t assigns, children, layout;
  };
  Mark mark() const { return {assigns.size(), children.size(), layout.size()}; }
  void reset(const Mark& m) {
    assigns.resize(m.assigns);
    children.resize(m.children);
    layout.resize(m.layout);
  }
};

std::string describe_token(const Token& t) { return "'" + t.text + "'"; }

std::string join_expected(const std::set<std::string>& expected) {
  std::vector<std::string> items(expected.begin(), expected.end());
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " or " : ", ";
    out += items[i];
  }
  return out;
}

class ParseRun {
 public:
  ParseRun(const CompiledGrammar& g, std::string_view text, const std::vector<Token>& tokens,
           std::string_view file)
      : g_(g), text_(text), tokens_(tokens), file_(file) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!tokens[i].is_trivia()) sig_.push_back(i);
    }
    LineIndex lines(text);
    eof_ = lines.position(text.size());
  }

  /// Returns the root on success; on failure the primary failure is in
  /// `failure()`.
  std::shared_ptr<const SyntaxNode> run(int rule, bool recovering) {
    recovering_ = recovering;
    memo_.clear();
    farthest_ = {};
    auto entry = call(rule, 0);
    if (entry->ok && entry->end == sig_.size()) return entry->node;
    if (entry->ok) fail(entry->end, "end of input");
    return nullptr;
  }

  const Failure& failure() const { return farthest_; }
  const std::vector<Failure>& recovered() const { return recovered_; }

  ProblemReport report(const Failure& f) const {
    Position at;
    std::string found;
    if (f.pos < sig_.size()) {
      const Token& t = tokens_[sig_[f.pos]];
      at = t.span.start;
      found = describe_token(t);
    } else {
      at = sig_.empty() ? Position{} : tokens_[sig_.back()].span.end;
      found = "end of input";
    }
    std::string message = "unexpected " + found;
    if (!f.expected.empty()) message += ", expected " + join_expected(f.expected);
    return make_error(std::move(message), std::string(file_), at.line, at.column,
                      std::string(kParserSource));
  }

 private:
  using EntryPtr = std::shared_ptr<const MemoEntry>;

  void fail(std::size_t pos, std::string expected) {
    Failure f;
    f.pos = pos;
    f.any = true;
    f.expected.insert(std::move(expected));
    farthest_.merge(f);
  }

  EntryPtr call(int rule, std::size_t pos) {
    std::uint64_t key = static_cast<std::uint64_t>(rule) * (sig_.size() + 1) + pos;
    if (auto it = memo_.find(key); it != memo_.end()) {
      farthest_.merge(it->second->failure);
      return it->second;
    }
    Failure saved = std::exchange(farthest_, Failure{});
    auto entry = std::make_shared<MemoEntry>();
    const Rule& r = g_.rules[rule];
    if (r.isInterface) {
      for (int impl : r.implementors) {
        auto sub = call(impl, pos);
        if (sub->ok) {
          entry->ok = true;
          entry->end = sub->end;
          entry->node = sub->node;
          break;
        }
      }
    } else {
      Builder b;
      std::size_t p = pos;
      if (match(r.body, p, b, rule)) {
        entry->ok = true;
        entry->end = p;
        entry->node = std::make_shared<const SyntaxNode>(make_node(rule, std::move(b), pos, p));
      }
    }
    entry->failure = farthest_;
    saved.merge(farthest_);
    farthest_ = std::move(saved);
    memo_.emplace(key, entry);
    return entry;
  }

  bool match(int opi, std::size_t& pos, Builder& b, int rule) {
    const Op& op = g_.ops[opi];
    switch (op.card) {
      case Cardinality::One:
        return match_once(op, pos, b, rule);
      case Cardinality::Optional: {
        auto mark = b.mark();
        std::size_t p = pos;
        if (match_once(op, p, b, rule)) {
          pos = p;
        } else {
          b.reset(mark);
        }
        return true;
      }
      case Cardinality::Star:
        repeat(op, pos, b, rule);
        return true;
      case Cardinality::Plus:
        if (!match_once(op, pos, b, rule)) return false;
        repeat(op, pos, b, rule);
        return true;
    }
    return false;
  }

  void repeat(const Op& op, std::size_t& pos, Builder& b, int rule) {
    const bool recover = recovering_ && op.recover;
    for (;;) {
      auto mark = b.mark();
      std::size_t p = pos;
      Failure saved;
      if (recover) saved = std::exchange(farthest_, Failure{});
      bool ok = match_once(op, p, b, rule);
      Failure attempt;
      if (recover) {
        attempt = farthest_;
        saved.merge(farthest_);
        farthest_ = std::move(saved);
      }
      if (ok && p > pos) {
        pos = p;
        continue;
      }
      b.reset(mark);
      if (ok || !recover || !attempt.any || attempt.pos <= pos) break;

      // The item started matching and then broke: report and resynchronize
      // at the next position where a whole item matches.
      recovered_.push_back(attempt);
      bool resynced = false;
      for (std::size_t j = std::max(attempt.pos, pos + 1); j < sig_.size() && !resynced; ++j) {
        auto probe_mark = b.mark();
        std::size_t q = j;
        Failure keep = farthest_;
        bool hit = match_once(op, q, b, rule);
        farthest_ = std::move(keep);
        if (hit && q > j) {
          pos = q;
          resynced = true;
        } else {
          b.reset(probe_mark);
        }
      }
      if (!resynced) break;
    }
  }

  bool leaf(std::size_t pos, Builder& b) {
    b.layout.emplace_back(Leaf{tokens_[sig_[pos]].text, sig_[pos]});
    return true;
  }

  bool match_once(const Op& op, std::size_t& pos, Builder& b, int rule) {
    switch (op.kind) {
      case OpKind::Sequence:
        for (int k : op.kids) {
          if (!match(k, pos, b, rule)) return false;
        }
        return true;
      case OpKind::Choice:
        for (int k : op.kids) {
          auto mark = b.mark();
          std::size_t p = pos;
          if (match(k, p, b, rule)) {
            pos = p;
            return true;
          }
          b.reset(mark);
        }
        return false;
      case OpKind::Block: {
        std::size_t begin = pos;
        if (!match(op.kids.front(), pos, b, rule)) return false;
        if (op.label >= 0) b.assigns.emplace_back(op.label, AttrScalar{slice(begin, pos)});
        return true;
      }
      case OpKind::Terminal:
        if (pos < sig_.size() && tokens_[sig_[pos]].text == op.text) {
          leaf(pos++, b);
          return true;
        }
        fail(pos, "'" + op.text + "'");
        return false;
      case OpKind::Flag:
        if (pos < sig_.size() && tokens_[sig_[pos]].text == op.text) {
          leaf(pos++, b);
          if (op.label >= 0) b.assigns.emplace_back(op.label, AttrScalar{true});
          return true;
        }
        fail(pos, "'" + op.text + "'");
        return false;
      case OpKind::Ident: {
        if (pos < sig_.size()) {
          const Token& t = tokens_[sig_[pos]];
          if (t.kind != TokenKind::ErrorChar && is_identifier_text(t.text) &&
              !g_.ruleKeywords[rule].count(t.text)) {
            if (op.label >= 0) b.assigns.emplace_back(op.label, AttrScalar{t.text});
            leaf(pos++, b);
            return true;
          }
        }
        fail(pos, "identifier");
        return false;
      }
      case OpKind::Pattern: {
        if (pos < sig_.size()) {
          const Token& t = tokens_[sig_[pos]];
          if (t.kind != TokenKind::ErrorChar && g_.lexer.matches_pattern(op.text, t.text)) {
            if (op.label >= 0) b.assigns.emplace_back(op.label, AttrScalar{t.text});
            leaf(pos++, b);
            return true;
          }
        }
        fail(pos, std::string(simple_name(op.text)));
        return false;
      }
      case OpKind::Rule: {
        auto sub = call(op.target, pos);
        if (!sub->ok) return false;
        ChildRef ref{b.children.size()};
        b.children.push_back(*sub->node);
        b.layout.emplace_back(ref);
        if (op.label >= 0) b.assigns.emplace_back(op.label, AttrScalar{ref});
        pos = sub->end;
        return true;
      }
    }
    return false;
  }

  std::string slice(std::size_t begin, std::size_t end) const {
    if (end <= begin) return {};
    std::size_t from = tokens_[sig_[begin]].span.start.offset;
    std::size_t to = tokens_[sig_[end - 1]].span.end.offset;
    return std::string(text_.substr(from, to - from));
  }

  Position position_before(std::size_t pos) const {
    return pos < sig_.size() ? tokens_[sig_[pos]].span.start : eof_;
  }

  static void clamp_empty(SyntaxNode& node, const Span& parent) {
    if (!node.span.empty()) return;
    Position p = node.span.start;
    if (p.offset < parent.start.offset) p = parent.start;
    if (p.offset > parent.end.offset) p = parent.end;
    node.span = {p, p};
    for (auto& c : node.children) clamp_empty(c, node.span);
  }

  SyntaxNode make_node(int rule, Builder&& b, std::size_t begin, std::size_t end) const {
    const Rule& r = g_.rules[rule];
    SyntaxNode node;
    node.production = r.name;
    node.fragment = r.fragment;
    for (const auto& label : r.labels) {
      switch (label.kind) {
        case LabelKind::List:
          node.attributes[label.name] = std::vector<AttrScalar>{};
          break;
        case LabelKind::Flag:
          node.attributes[label.name] = AttrScalar{false};
          break;
        case LabelKind::Scalar:
          break;
      }
    }
    for (auto& [slot, value] : b.assigns) {
      const auto& label = r.labels[slot];
      if (label.kind == LabelKind::List) {
        std::get<std::vector<AttrScalar>>(node.attributes[label.name]).push_back(std::move(value));
      } else {
        node.attributes[label.name] = std::move(value);
      }
    }
    node.children = std::move(b.children);
    node.layout = std::move(b.layout);
    if (end > begin) {
      node.span = {tokens_[sig_[begin]].span.start, tokens_[sig_[end - 1]].span.end};
    } else {
      Position p = position_before(begin);
      node.span = {p, p};
    }
    for (auto& c : node.children) clamp_empty(c, node.span);
    return node;
  }

  const CompiledGrammar& g_;
  std::string_view text_;
  const std::vector<Token>& tokens_;
  std::string_view file_;
  std::vector<std::size_t> sig_;
  Position eof_;
  bool recovering_ = false;
  Failure farthest_;
  std::vector<Failure> recovered_;
  std::unordered_map<std::uint64_t, std::shared_ptr<const MemoEntry>> memo_;
};

void classify_tree(const SyntaxNode& node, const CompiledGrammar& g, std::vector<Token>& tokens) {
  const FragmentInfo* f = g.language.find_fragment(node.fragment);
  static const std::set<std::string> kNone;
  for (const auto& item : node.layout) {
    if (const auto* leaf = std::get_if<Leaf>(&item)) classify(tokens[leaf->token], f ? f->keywords : kNone);
  }
  for (const auto& c : node.children) classify_tree(c, g, tokens);
}

}  // namespace

Result<ParserEngine> ParserEngine::build(const ComposedLanguage& language) {
  auto grammar = std::make_shared<CompiledGrammar>(language);
  std::vector<ProblemReport> problems = Compiler(*grammar).run();
  if (!has_errors(problems)) {
    auto checks = GrammarChecks(*grammar).run();
    problems.insert(problems.end(), checks.begin(), checks.end());
  }
  if (has_errors(problems)) return Result<ParserEngine>::failure(std::move(problems));
  return Result<ParserEngine>(ParserEngine(std::move(grammar)), std::move(problems));
}

const ComposedLanguage& ParserEngine::language() const { return grammar_->language; }
const Lexer& ParserEngine::lexer() const { return grammar_->lexer; }

ParseOutcome ParserEngine::parse(std::string_view text, std::string_view file) const {
  return parse(text, file, grammar_->language.startSymbol);
}

ParseOutcome ParserEngine::parse(std::string_view text, std::string_view file,
                                 std::string_view production) const {
  const auto& g = *grammar_;
  ParseOutcome outcome;

  int rule = -1;
  if (auto it = g.ruleIndex.find(std::string(production)); it != g.ruleIndex.end()) {
    rule = it->second;
  } else {
    for (std::size_t i = 0; i < g.rules.size() && rule < 0; ++i) {
      if (simple_name(g.rules[i].name) == production) rule = static_cast<int>(i);
    }
  }
  if (rule < 0) {
    outcome.problems.push_back(make_error("unknown production " + std::string(production),
                                          std::string(file), 1, 1, std::string(kParserSource)));
    return outcome;
  }

  std::vector<ProblemReport> lex_problems;
  outcome.tokens = g.lexer.tokenize(text, file, &lex_problems);
  const FragmentInfo* mode = g.language.find_fragment(g.rules[rule].fragment);
  static const std::set<std::string> kNone;
  for (auto& t : outcome.tokens) classify(t, mode ? mode->keywords : kNone);

  ParseRun run(g, text, outcome.tokens, file);
  auto root = run.run(rule, false);
  outcome.problems = std::move(lex_problems);
  if (root && outcome.problems.empty()) {
    classify_tree(*root, g, outcome.tokens);
    outcome.root = *root;
    return outcome;
  }
  if (root) {
    // Lexical errors only; the tree is dropped so that a present root always
    // means an error-free parse.
    classify_tree(*root, g, outcome.tokens);
    return outcome;
  }

  std::vector<ProblemReport> reports{run.report(run.failure())};
  std::size_t primary = run.failure().pos;
  ParseRun recovery(g, text, outcome.tokens, file);
  recovery.run(rule, true);
  std::set<std::size_t> seen{primary};
  for (const auto& f : recovery.recovered()) {
    if (seen.insert(f.pos).second) reports.push_back(recovery.report(f));
  }
  std::stable_sort(reports.begin(), reports.end(), [](const ProblemReport& a, const ProblemReport& b) {
    return std::pair(a.line, a.column) < std::pair(b.line, b.column);
  });
  outcome.problems.insert(outcome.problems.end(), reports.begin(), reports.end());
  return outcome;
}

}  // namespace fragmentc
