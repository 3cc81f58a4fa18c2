#include "fragmentc/grammar_frontend.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "body_analysis.hpp"
#include "meta_lexer.hpp"

namespace fragmentc {

using detail::MetaError;
using detail::MetaLexer;
using detail::MetaToken;
using detail::MetaTokenKind;

namespace {

constexpr std::string_view kFrontendSource = "grammar";

class MetaParserBase {
 public:
  MetaParserBase(std::string_view text, std::string_view origin) : lex_(text), origin_(origin) {}

 protected:
  [[noreturn]] void fail(const MetaToken& at, const std::string& message) {
    throw MetaError(message, at.position);
  }

  [[noreturn]] void unexpected(const MetaToken& at, std::string_view expected) {
    fail(at, "unexpected " + detail::describe(at) + ", expected " + std::string(expected));
  }

  MetaToken expect_symbol(char c) {
    if (!lex_.peek().is_symbol(c)) unexpected(lex_.peek(), std::string("'") + c + "'");
    return lex_.next();
  }

  MetaToken expect_ident(std::string_view what = "identifier") {
    if (lex_.peek().kind != MetaTokenKind::Ident) unexpected(lex_.peek(), what);
    return lex_.next();
  }

  MetaToken expect_word(std::string_view word) {
    if (!lex_.peek().is_ident(word)) unexpected(lex_.peek(), "'" + std::string(word) + "'");
    return lex_.next();
  }

  MetaToken expect_string() {
    if (lex_.peek().kind != MetaTokenKind::String) unexpected(lex_.peek(), "string literal");
    return lex_.next();
  }

  bool accept_symbol(char c) {
    if (!lex_.peek().is_symbol(c)) return false;
    lex_.next();
    return true;
  }

  std::string qualified_name() {
    std::string name = expect_ident().text;
    while (lex_.peek().is_symbol('.')) {
      lex_.next();
      name += '.';
      name += expect_ident().text;
    }
    return name;
  }

  std::vector<std::string> ident_list() {
    std::vector<std::string> names{expect_ident().text};
    while (accept_symbol(',')) names.push_back(expect_ident().text);
    return names;
  }

  ProblemReport report_at(const Position& pos, std::string message,
                          Severity severity = Severity::Error) const {
    // EOF errors point just past the last token; clamp into the text.
    int line = std::min<int>(pos.line, count_lines(lex_.text()));
    int column = pos.line == line ? pos.column : 1;
    return {severity, std::move(message), origin_, std::max(line, 1), std::max(column, 1),
            std::string(kFrontendSource)};
  }

  ProblemReport report_eof_aware(const MetaError& error) {
    Position pos = error.position;
    if (pos.offset >= lex_.text().size() && pos.line > count_lines(lex_.text())) {
      pos = lex_.last_end();
    }
    return report_at(pos, error.what());
  }

  MetaLexer lex_;
  std::string origin_;
};

// ---------------------------------------------------------------------------
// Grammar files

class GrammarParser : MetaParserBase {
 public:
  using MetaParserBase::MetaParserBase;

  Result<GrammarFragment> run() {
    try {
      if (lex_.peek().kind == MetaTokenKind::End) {
        return Result<GrammarFragment>::failure(report_at(lex_.peek().position, "no grammar found"));
      }
      parse_file();
    } catch (const MetaError& error) {
      return Result<GrammarFragment>::failure(report_eof_aware(error));
    }
    if (!errors_.empty()) return Result<GrammarFragment>::failure(std::move(errors_));
    return Result<GrammarFragment>(std::move(fragment_), std::move(warnings_));
  }

 private:
  void parse_file() {
    auto head = expect_word("grammar");
    fragment_.line = head.position.line;
    fragment_.origin = origin_;
    fragment_.name = expect_ident("grammar name").text;
    if (lex_.peek().is_ident("extends")) {
      lex_.next();
      fragment_.superGrammars.push_back(qualified_name());
      while (accept_symbol(',')) fragment_.superGrammars.push_back(qualified_name());
    }
    expect_symbol('{');
    while (!lex_.peek().is_symbol('}')) {
      if (lex_.peek().kind == MetaTokenKind::End) unexpected(lex_.peek(), "'}'");
      parse_member();
    }
    lex_.next();
    if (lex_.peek().kind != MetaTokenKind::End) unexpected(lex_.peek(), "end of input");
  }

  void parse_member() {
    const MetaToken& first = lex_.peek();
    if (first.kind != MetaTokenKind::Ident) unexpected(first, "production or declaration");
    bool declaration = lex_.peek_second().kind == MetaTokenKind::Ident;
    if (declaration && first.text == "interface") {
      lex_.next();
      auto name = expect_ident();
      declare(name, "interface");
      fragment_.interfaces.push_back(name.text);
      expect_symbol(';');
    } else if (declaration && first.text == "external") {
      lex_.next();
      auto name = expect_ident();
      declare(name, "external");
      fragment_.externals.push_back(name.text);
      expect_symbol(';');
    } else if (declaration && first.text == "token") {
      lex_.next();
      auto name = expect_ident();
      declare(name, "token");
      expect_symbol('=');
      auto regex = lex_.next_regex();
      expect_symbol(';');
      fragment_.tokens.push_back({name.text, regex.text, name.position.line});
    } else if (declaration && first.text == "concept") {
      parse_concept();
    } else {
      parse_production();
    }
  }

  void declare(const MetaToken& name, std::string_view kind) {
    auto [it, inserted] = declared_.emplace(name.text, std::string(kind));
    if (!inserted) {
      std::string message = it->second == kind && kind == "production"
                                ? "duplicate production name " + name.text
                                : "duplicate declaration of " + name.text + " (already declared as " +
                                      it->second + ")";
      errors_.push_back(report_at(name.position, message));
    }
  }

  void parse_production() {
    auto name = expect_ident("production name");
    declare(name, "production");
    Production production;
    production.name = name.text;
    production.line = name.position.line;
    if (lex_.peek().is_ident("implements")) {
      lex_.next();
      production.implementsList = ident_list();
    }
    expect_symbol('=');
    production.body = parse_alternative();
    expect_symbol(';');
    fragment_.productions.push_back(std::move(production));
  }

  BodyExpr parse_alternative() {
    std::vector<BodyExpr> branches{parse_sequence()};
    while (accept_symbol('|')) branches.push_back(parse_sequence());
    if (branches.size() == 1) return std::move(branches.front());
    return BodyExpr{Alternative{std::move(branches)}, Cardinality::One};
  }

  bool at_sequence_end() {
    const auto& t = lex_.peek();
    return t.kind == MetaTokenKind::End || t.is_symbol('|') || t.is_symbol(')') ||
           t.is_symbol(';');
  }

  BodyExpr parse_sequence() {
    if (at_sequence_end()) unexpected(lex_.peek(), "production element");
    std::vector<BodyExpr> items;
    while (!at_sequence_end()) items.push_back(parse_item());
    if (items.size() == 1) return std::move(items.front());
    return BodyExpr{Sequence{std::move(items)}, Cardinality::One};
  }

  BodyExpr parse_item() {
    std::optional<std::string> label;
    if (lex_.peek().kind == MetaTokenKind::Ident && lex_.peek_second().is_symbol(':')) {
      label = lex_.next().text;
      lex_.next();
    }
    BodyExpr item;
    const MetaToken& t = lex_.peek();
    if (t.kind == MetaTokenKind::String) {
      if (label) fail(t, "label '" + *label + "' cannot name a terminal; use " + *label + ":[\"" + t.text + "\"]");
      auto term = lex_.next();
      check_terminal(term);
      item.node = Terminal{term.text};
    } else if (t.kind == MetaTokenKind::Ident) {
      item.node = NonterminalRef{lex_.next().text, label};
    } else if (t.is_symbol('(')) {
      lex_.next();
      BodyExpr inner = parse_alternative();
      expect_symbol(')');
      item.node = Block{Box<BodyExpr>(std::move(inner)), label};
    } else if (t.is_symbol('[')) {
      if (!label) fail(t, "presence keyword [\"...\"] requires a label");
      lex_.next();
      auto kw = expect_string();
      check_terminal(kw);
      expect_symbol(']');
      item.node = PresenceFlag{*label, kw.text};
    } else {
      unexpected(t, "production element");
    }
    const MetaToken& card = lex_.peek();
    if (card.is_symbol('?')) {
      item.cardinality = Cardinality::Optional;
      lex_.next();
    } else if (card.is_symbol('*')) {
      item.cardinality = Cardinality::Star;
      lex_.next();
    } else if (card.is_symbol('+')) {
      item.cardinality = Cardinality::Plus;
      lex_.next();
    }
    return item;
  }

  void check_terminal(const MetaToken& term) {
    if (term.text.empty()) fail(term, "terminal must not be empty");
    if (std::any_of(term.text.begin(), term.text.end(),
                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      fail(term, "terminal \"" + term.text + "\" must not contain whitespace");
    }
  }

  void parse_concept() {
    auto head = lex_.next();
    auto name = expect_ident("concept name");
    if (name.text != "texteditor") {
      auto open = expect_symbol('{');
      int depth = 1;
      MetaToken last = open;
      while (depth > 0) {
        last = lex_.next();
        if (last.kind == MetaTokenKind::End) unexpected(last, "'}'");
        if (last.is_symbol('{')) ++depth;
        if (last.is_symbol('}')) --depth;
      }
      std::size_t begin = open.endOffset;
      std::size_t end = last.position.offset;
      std::string body(lex_.text().substr(begin, end - begin));
      auto trim_begin = body.find_first_not_of(" \t\r\n");
      auto trim_end = body.find_last_not_of(" \t\r\n");
      body = trim_begin == std::string::npos ? std::string()
                                             : body.substr(trim_begin, trim_end - trim_begin + 1);
      fragment_.opaqueConcepts.push_back({name.text, body, head.position.line});
      warnings_.push_back(report_at(head.position,
                                    "concept " + name.text + " is not supported and is kept opaque",
                                    Severity::Warning));
      return;
    }
    if (fragment_.editorConcept) fail(head, "duplicate concept texteditor");
    FragmentEditorConcept concept_def;
    concept_def.line = head.position.line;
    expect_symbol('{');
    while (!accept_symbol('}')) {
      const MetaToken& clause = lex_.peek();
      if (clause.is_ident("keywords")) {
        lex_.next();
        expect_symbol(':');
        auto words = ident_list();
        concept_def.keywords.insert(concept_def.keywords.end(), words.begin(), words.end());
        expect_symbol(';');
      } else if (clause.is_ident("foldable")) {
        lex_.next();
        expect_symbol(':');
        auto names = ident_list();
        concept_def.foldable.insert(concept_def.foldable.end(), names.begin(), names.end());
        expect_symbol(';');
      } else if (clause.is_ident("segment")) {
        concept_def.segments.push_back(parse_segment());
      } else {
        unexpected(clause, "keywords, foldable, segment or '}'");
      }
    }
    fragment_.editorConcept = std::move(concept_def);
  }

  SegmentDef parse_segment() {
    SegmentDef seg;
    seg.line = lex_.next().position.line;
    expect_symbol(':');
    seg.nonterminal = expect_ident("nonterminal").text;
    if (accept_symbol('(')) {
      seg.iconPath = expect_string().text;
      expect_symbol(')');
    }
    expect_word("show");
    expect_symbol(':');
    while (!lex_.peek().is_symbol(';')) {
      const MetaToken& t = lex_.peek();
      if (t.kind == MetaTokenKind::String) {
        seg.templateItems.push_back({TemplateItem::Kind::Literal, lex_.next().text});
      } else if (t.kind == MetaTokenKind::Ident) {
        seg.templateItems.push_back({TemplateItem::Kind::AttributeRef, lex_.next().text});
      } else {
        unexpected(t, "string, attribute name or ';'");
      }
    }
    lex_.next();
    return seg;
  }

  GrammarFragment fragment_;
  std::map<std::string, std::string> declared_;
  std::vector<ProblemReport> errors_;
  std::vector<ProblemReport> warnings_;
};

// ---------------------------------------------------------------------------
// Tool configuration files

class ToolConfigParser : MetaParserBase {
 public:
  using MetaParserBase::MetaParserBase;

  Result<ToolConfig> run() {
    try {
      parse_file();
    } catch (const MetaError& error) {
      return Result<ToolConfig>::failure(report_eof_aware(error));
    }
    if (!errors_.empty()) return Result<ToolConfig>::failure(std::move(errors_));
    return Result<ToolConfig>(std::move(config_));
  }

 private:
  void parse_file() {
    config_.origin = origin_;
    bool saw_root = false;
    bool saw_concept = false;
    while (lex_.peek().kind != MetaTokenKind::End) {
      const MetaToken& t = lex_.peek();
      if (t.is_ident("rootfactory")) {
        if (saw_root) fail(t, "duplicate rootfactory section");
        saw_root = true;
        parse_rootfactory();
      } else if (t.is_ident("concept")) {
        lex_.next();
        auto name = expect_ident("concept name");
        if (name.text != "texteditor") fail(name, "unknown section concept " + name.text);
        if (saw_concept) fail(name, "duplicate concept texteditor");
        saw_concept = true;
        parse_editor_concept();
      } else {
        fail(t, "unknown section " + detail::describe(t));
      }
    }
    if (!saw_root) {
      errors_.push_back(report_at(lex_.peek().position, "missing rootfactory section"));
    }
  }

  void parse_rootfactory() {
    auto head = lex_.next();
    config_.rootFactoryName = expect_ident("root factory name").text;
    expect_word("for");
    std::string type_name;
    while (!lex_.peek().is_symbol('{')) {
      if (lex_.peek().kind == MetaTokenKind::End) unexpected(lex_.peek(), "'{'");
      type_name += lex_.next().text;
    }
    if (type_name.empty()) unexpected(lex_.peek(), "root type name");
    config_.rootTypeName = type_name;
    expect_symbol('{');
    bool saw_start = false;
    while (!accept_symbol('}')) {
      if (lex_.peek().is_ident("prettyprint") && lex_.peek_second().is_symbol('{')) {
        lex_.next();
        lex_.next();
        while (!accept_symbol('}')) {
          config_.prettyPrinters.push_back(qualified_name());
          expect_symbol(';');
        }
        continue;
      }
      auto qualified_pos = lex_.peek().position;
      std::string qualified = qualified_name();
      auto alias = expect_ident("alias");
      if (lex_.peek().is_symbol('<')) {
        auto marker = lex_.next();
        expect_symbol('<');
        expect_word("start");
        expect_symbol('>');
        expect_symbol('>');
        expect_symbol(';');
        if (saw_start) {
          errors_.push_back(report_at(marker.position, "duplicate <<start>> marker"));
          continue;
        }
        saw_start = true;
        config_.startBinding = {qualified, alias.text, qualified_pos.line};
      } else if (lex_.peek().is_ident("in")) {
        lex_.next();
        std::string path = qualified_name();
        expect_symbol(';');
        auto target = split_qualified(qualified);
        if (target.grammar.empty()) {
          fail(alias, "embedding target " + qualified + " must be qualified as Grammar.Nonterminal");
        }
        EmbeddingBinding binding;
        binding.externalName = std::string(simple_name(path));
        binding.alias = alias.text;
        binding.hostPath = path;
        binding.fillerGrammar = target.grammar;
        binding.fillerNonterminal = target.nonterminal;
        binding.line = qualified_pos.line;
        config_.embeddings.push_back(std::move(binding));
      } else {
        unexpected(lex_.peek(), "'<<start>>' or 'in'");
      }
    }
    if (!saw_start) errors_.push_back(report_at(head.position, "missing <<start>> marker"));
  }

  NamedAction parse_action(ActionKind kind) {
    lex_.next();
    NamedAction action;
    action.kind = kind;
    std::string display;
    while (lex_.peek().kind == MetaTokenKind::Ident) {
      if (!display.empty()) display += ' ';
      display += lex_.next().text;
    }
    if (display.empty()) unexpected(lex_.peek(), "action display name");
    action.displayName = display;
    expect_symbol('(');
    action.actionId = expect_string().text;
    expect_symbol(')');
    expect_symbol(';');
    return action;
  }

  void parse_editor_concept() {
    expect_symbol('{');
    auto& editor = config_.editor;
    while (!accept_symbol('}')) {
      const MetaToken& clause = lex_.peek();
      if (clause.is_ident("tool")) {
        lex_.next();
        expect_symbol(':');
        editor.toolClassName = expect_string().text;
        expect_symbol(';');
      } else if (clause.is_ident("workflows")) {
        lex_.next();
        expect_symbol(':');
        auto names = ident_list();
        editor.workflows.insert(editor.workflows.end(), names.begin(), names.end());
        expect_symbol(';');
      } else if (clause.is_ident("menuitem")) {
        editor.menuItems.push_back(parse_action(ActionKind::Editor));
      } else if (clause.is_ident("navigatoritem")) {
        editor.navigatorItems.push_back(parse_action(ActionKind::Navigator));
      } else if (clause.is_ident("extensions")) {
        lex_.next();
        expect_symbol(':');
        do {
          accept_symbol('.');
          editor.extensions.push_back("." + expect_ident("file extension").text);
        } while (accept_symbol(','));
        expect_symbol(';');
      } else {
        fail(clause, "unknown section " + detail::describe(clause) + " in concept texteditor");
      }
    }
  }

  ToolConfig config_;
  std::vector<ProblemReport> errors_;
};

// ---------------------------------------------------------------------------
// Pretty printing

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string card_suffix(Cardinality c) {
  switch (c) {
    case Cardinality::Optional:
      return "?";
    case Cardinality::Star:
      return "*";
    case Cardinality::Plus:
      return "+";
    case Cardinality::One:
      break;
  }
  return "";
}

void print_body(const BodyExpr& e, std::string& out) {
  const std::size_t start = out.size();
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Sequence>) {
          for (std::size_t i = 0; i < node.items.size(); ++i) {
            if (i) out += ' ';
            print_body(node.items[i], out);
          }
        } else if constexpr (std::is_same_v<T, Alternative>) {
          for (std::size_t i = 0; i < node.branches.size(); ++i) {
            if (i) out += " | ";
            print_body(node.branches[i], out);
          }
        } else if constexpr (std::is_same_v<T, Block>) {
          if (node.label) out += *node.label + ":";
          out += '(';
          print_body(*node.inner, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Terminal>) {
          out += quote(node.text);
        } else if constexpr (std::is_same_v<T, NonterminalRef>) {
          if (node.label) out += *node.label + ":";
          out += node.target;
        } else if constexpr (std::is_same_v<T, PresenceFlag>) {
          out += node.label + ":[" + quote(node.keyword) + "]";
        }
      },
      e.node);
  // A cardinality on a bare sequence or alternative would bind to the last
  // item when re-parsed, so those are always wrapped.
  bool compound = std::holds_alternative<Sequence>(e.node) || std::holds_alternative<Alternative>(e.node);
  if (compound && e.cardinality != Cardinality::One) {
    out.insert(start, "(");
    out += ')';
  }
  out += card_suffix(e.cardinality);
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

Result<GrammarFragment> parse_grammar(std::string_view text, std::string_view origin) {
  return GrammarParser(text, origin).run();
}

Result<ToolConfig> parse_tool_config(std::string_view text, std::string_view origin) {
  return ToolConfigParser(text, origin).run();
}

std::string meta_pretty_print(const BodyExpr& body) {
  std::string out;
  print_body(body, out);
  return out;
}

std::string meta_pretty_print(const GrammarFragment& f) {
  std::string out = "grammar " + f.name;
  if (!f.superGrammars.empty()) out += " extends " + join(f.superGrammars, ", ");
  out += " {\n";
  for (const auto& i : f.interfaces) out += "  interface " + i + ";\n";
  for (const auto& e : f.externals) out += "  external " + e + ";\n";
  for (const auto& t : f.tokens) {
    std::string pattern;
    for (char c : t.pattern) {
      if (c == '/') pattern += '\\';
      pattern += c;
    }
    out += "  token " + t.name + " = /" + pattern + "/;\n";
  }
  if (!f.interfaces.empty() || !f.externals.empty() || !f.tokens.empty()) out += '\n';
  for (const auto& p : f.productions) {
    out += "  " + p.name;
    if (!p.implementsList.empty()) out += " implements " + join(p.implementsList, ", ");
    out += " = " + meta_pretty_print(p.body) + ";\n";
  }
  if (f.editorConcept) {
    const auto& c = *f.editorConcept;
    out += "\n  concept texteditor {\n";
    if (!c.keywords.empty()) out += "    keywords: " + join(c.keywords, ", ") + ";\n";
    if (!c.foldable.empty()) out += "    foldable: " + join(c.foldable, ", ") + ";\n";
    for (const auto& s : c.segments) {
      out += "    segment: " + s.nonterminal;
      if (!s.iconPath.empty()) out += " (" + quote(s.iconPath) + ")";
      out += " show:";
      for (const auto& item : s.templateItems) {
        out += ' ';
        out += item.kind == TemplateItem::Kind::Literal ? quote(item.text) : item.text;
      }
      out += ";\n";
    }
    out += "  }\n";
  }
  for (const auto& o : f.opaqueConcepts) {
    out += "\n  concept " + o.name + " {\n    " + o.text + "\n  }\n";
  }
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class FragmentValidator {
 public:
  FragmentValidator(const GrammarFragment& f, std::span<const GrammarFragment> supers)
      : f_(f), supers_(supers) {}

  std::vector<ProblemReport> run() {
    check_disjoint_names();
    for (const auto& p : f_.productions) check_production(p);
    if (f_.editorConcept) check_concept(*f_.editorConcept);
    return std::move(reports_);
  }

 private:
  void error(int line, std::string message) {
    reports_.push_back(make_error(std::move(message), f_.origin, std::max(line, 1), 1,
                                  std::string(kFrontendSource)));
  }

  void check_disjoint_names() {
    std::map<std::string, std::string> seen;
    auto note = [&](const std::string& name, std::string_view kind, int line) {
      auto [it, inserted] = seen.emplace(name, std::string(kind));
      if (!inserted) {
        error(line, "name " + name + " is declared as both " + it->second + " and " + std::string(kind));
      }
    };
    for (const auto& i : f_.interfaces) note(i, "interface", f_.line);
    for (const auto& e : f_.externals) note(e, "external", f_.line);
    for (const auto& t : f_.tokens) note(t.name, "token", t.line);
    for (const auto& p : f_.productions) note(p.name, "production", p.line);
  }

  bool any_super(const std::function<bool(const GrammarFragment&)>& pred) const {
    return std::any_of(supers_.begin(), supers_.end(), pred);
  }

  const Production* find_production(std::string_view name) const {
    if (const auto* p = f_.find_production(name)) return p;
    for (const auto& s : supers_) {
      if (const auto* p = s.find_production(name)) return p;
    }
    return nullptr;
  }

  bool is_interface(std::string_view name) const {
    return f_.declares_interface(name) ||
           any_super([&](const GrammarFragment& s) { return s.declares_interface(name); });
  }

  bool resolves(std::string_view name) const {
    if (name == kIdentToken) return true;
    auto local = [&](const GrammarFragment& g) {
      return g.find_production(name) || g.declares_interface(name) || g.declares_external(name) ||
             g.find_token(name);
    };
    return local(f_) || any_super(local);
  }

  void check_production(const Production& p) {
    std::set<std::string> reported;
    detail::for_each_ref(p.body, [&](const NonterminalRef& ref) {
      if (!resolves(ref.target) && reported.insert(ref.target).second) {
        error(p.line, "unresolved nonterminal " + ref.target + " in production " + p.name);
      }
    });
    for (const auto& i : p.implementsList) {
      if (!is_interface(i)) error(p.line, "production " + p.name + " implements undeclared interface " + i);
    }
    for (const auto& label : detail::analyze_labels(p.body)) {
      if (label.inconsistent) {
        error(p.line, "label " + label.name + " in production " + p.name +
                          " is used both as a presence flag and as a value");
      }
    }
  }

  void check_concept(const FragmentEditorConcept& c) {
    for (const auto& kw : c.keywords) {
      bool bad = kw.empty() || std::any_of(kw.begin(), kw.end(), [](char ch) {
                   return std::isspace(static_cast<unsigned char>(ch));
                 });
      if (bad) error(c.line, "keyword '" + kw + "' must be a non-empty word");
    }
    for (const auto& name : c.foldable) {
      if (!find_production(name)) error(c.line, "foldable names unknown production " + name);
    }
    for (const auto& seg : c.segments) {
      const Production* target = find_production(seg.nonterminal);
      if (!target) {
        error(seg.line, "segment for " + seg.nonterminal + " names an unknown production");
        continue;
      }
      auto labels = detail::analyze_labels(target->body);
      for (const auto& item : seg.templateItems) {
        if (item.kind != TemplateItem::Kind::AttributeRef) continue;
        bool known = std::any_of(labels.begin(), labels.end(),
                                 [&](const detail::LabelInfo& l) { return l.name == item.text; });
        if (!known) {
          error(seg.line, "segment for " + seg.nonterminal + " references unknown attribute " +
                              item.text);
        }
      }
    }
  }

  const GrammarFragment& f_;
  std::span<const GrammarFragment> supers_;
  std::vector<ProblemReport> reports_;
};

}  // namespace

std::vector<ProblemReport> validate_fragment(const GrammarFragment& fragment,
                                             std::span<const GrammarFragment> resolvedSupers) {
  return FragmentValidator(fragment, resolvedSupers).run();
}

}  // namespace fragmentc
