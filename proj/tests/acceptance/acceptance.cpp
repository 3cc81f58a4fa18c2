// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "grammar_oracle.hpp"
#include "msc_generator.hpp"

#include "fragmentc/demo/msc_components.hpp"
#include "fragmentc/grammar_frontend.hpp"
#include "fragmentc/grammar_loader.hpp"

namespace fragmentc {
namespace {

using Clock = std::chrono::steady_clock;
using Keywords = std::set<std::string>;

constexpr double kSingleCaseLimitMs = 1000.0;
constexpr double kRoundTripLimitMs = 10000.0;
constexpr int kRoundTripDocuments = 100;
constexpr int kOraclePairs = 200;
constexpr std::size_t kOracleMaxTokens = 12;
constexpr unsigned kRoundTripSeed = 20240501;
constexpr unsigned kOracleSeed = 20240502;

const Keywords kMscKeywords = {"msc", "instance", "in", "out", "to", "from", "condition", "shared", "all"};
const Keywords kJavaKeywords = {"public", "private", "static", "boolean", "int",  "void",
                                "return", "if",      "else",   "true",    "false", "null"};

/// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <class A, class B>
  void equal(const A& actual, const B& expected, const std::string& what) {
    if (!(actual == expected)) failures_.push_back(what);
  }
  void note(std::string text) { notes_.push_back(std::move(text)); }

  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

FragmentLookup corpus_lookup() {
  static GrammarLoader loader({testing::corpus_dir()});
  return loader.lookup();
}

LanguageService open_service(std::string_view config, Check& check) {
  auto service = open_tool(testing::corpus_path(config), {testing::corpus_dir()}, demo::default_registry());
  check.expect(service.ok(), "cannot open " + std::string(config));
  if (!service) throw std::runtime_error("cannot open " + std::string(config));
  return std::move(service).value();
}

// ---------------------------------------------------------------------------

void grammar_fidelity(Check& check) {
  auto fragment = parse_grammar(testing::read_corpus("mc/examples/msc/msc/MSC.mc"), "MSC.mc");
  check.expect(fragment.ok(), "MSC grammar does not parse");
  if (!fragment) return;
  check.equal(fragment.problems().size(), 0u, "parse reported problems");
  const auto& f = fragment.value();
  check.equal(f.productions.size(), 5u, "production count != 5");
  check.equal(f.interfaces.size(), 1u, "interface count != 1");
  check.equal(f.externals.size(), 2u, "external count != 2");
  check.expect(f.editorConcept.has_value(), "no texteditor concept");
  if (!f.editorConcept) return;
  check.equal(f.editorConcept->keywords,
              std::vector<std::string>{"msc", "instance", "in", "out", "to", "from", "condition", "shared", "all"},
              "keyword list differs");
  check.equal(f.editorConcept->foldable, std::vector<std::string>{"MSC", "Instance", "Condition"},
              "foldable list differs");
  check.equal(validate_fragment(f, {}).size(), 0u, "validation reported problems");
}

bool refs_resolve(const BodyExpr& e, const ComposedLanguage& lang) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Sequence>) {
          return std::all_of(n.items.begin(), n.items.end(), [&](const BodyExpr& i) { return refs_resolve(i, lang); });
        } else if constexpr (std::is_same_v<T, Alternative>) {
          return std::all_of(n.branches.begin(), n.branches.end(),
                             [&](const BodyExpr& b) { return refs_resolve(b, lang); });
        } else if constexpr (std::is_same_v<T, Block>) {
          return refs_resolve(*n.inner, lang);
        } else if constexpr (std::is_same_v<T, NonterminalRef>) {
          return n.target == kIdentToken || lang.productions.count(n.target) || lang.tokens.count(n.target) ||
                 lang.is_interface(n.target);
        } else {
          return true;
        }
      },
      e.node);
}

void composition_fidelity(Check& check) {
  auto config = load_tool_config(testing::corpus_path("msc.mctool"));
  check.expect(config.ok(), "tool configuration does not parse");
  if (!config) return;
  check.equal(config->embeddings.size(), 2u, "expected two embeddings");
  auto composed = compose(config.value(), corpus_lookup());
  check.expect(composed.ok(), "composition failed");
  if (!composed) return;
  const auto& lang = composed.value();
  int unbound = 0;
  for (const auto& [name, p] : lang.productions) unbound += !refs_resolve(p.body, lang);
  check.equal(unbound, 0, "unbound references remain");
  check.equal(lang.sourceFragments, std::vector<std::string>{"MSC", "JavaDSL"}, "fragments differ");
  Keywords expected = kMscKeywords;
  expected.insert(kJavaKeywords.begin(), kJavaKeywords.end());
  check.equal(lang.effectiveEditor.keywords, expected, "effective keyword set differs");
  check.note(std::to_string(lang.effectiveEditor.keywords.size()) + " keywords");
}

const OutlineSymbol* find_symbol(const std::vector<OutlineSymbol>& symbols, std::string_view label) {
  for (const auto& s : symbols) {
    if (s.label == label) return &s;
    if (const auto* hit = find_symbol(s.children, label)) return hit;
  }
  return nullptr;
}

void end_to_end(Check& check) {
  LanguageService service = open_service("msc.mctool", check);
  auto analysis = service.analyze(testing::mail_chart(), "mail.msc");
  check.expect(analysis.outcome.root.has_value(), "mail chart does not parse");
  check.equal(analysis.features.diagnostics.size(), 0u, "diagnostics not empty");
  if (!analysis.outcome.root) return;
  const SyntaxNode& root = *analysis.outcome.root;
  check.equal(root.text("name"), std::optional<std::string>("mail"), "chart name");
  std::vector<const SyntaxNode*> instances;
  for (const auto& c : root.children) {
    if (c.local_name() == "Instance") instances.push_back(&c);
  }
  check.equal(instances.size(), 2u, "instance count");
  if (instances.size() == 2) {
    check.equal(instances[0]->text("name"), std::optional<std::string>("sender"), "first instance");
    check.equal(instances[1]->text("name"), std::optional<std::string>("receiver"), "second instance");
    const auto& s = instances[0]->children;
    check.expect(s.size() == 2 && s[0].local_name() == "SendEvent" && s[0].text("message") == "message" &&
                     s[0].text("receiver") == "receiver" && s[1].local_name() == "ReceiveEvent" &&
                     s[1].text("message") == "response" && s[1].text("sender") == "receiver",
                 "sender events");
    bool inbox = std::any_of(instances[1]->children.begin(), instances[1]->children.end(), [](const SyntaxNode& e) {
      return e.local_name() == "Condition" && e.text("name") == "inbox";
    });
    check.expect(inbox, "receiver has no Condition inbox");
  }
  check.expect(find_symbol(analysis.features.outline, "Send to receiver:message") != nullptr,
               "outline lacks 'Send to receiver:message'");
  std::set<std::pair<int, int>> folds;
  for (const auto& f : analysis.features.folds) folds.insert({f.span.start.line, f.span.end.line});
  check.equal(folds, std::set<std::pair<int, int>>{{1, 19}, {3, 6}, {8, 14}, {10, 12}}, "folding ranges differ");
}

void inheritance(Check& check) {
  LanguageService super = open_service("msc.mctool", check);
  LanguageService sub = open_service("vipmsc.mctool", check);
  const auto& superKeywords = super.language().effectiveEditor.keywords;
  const auto& subKeywords = sub.language().effectiveEditor.keywords;
  Keywords expected = superKeywords;
  expected.insert("vip");
  check.equal(subKeywords, expected, "sub keyword set is not super plus 'vip'");

  const auto& impls = sub.language().interfaceImpls;
  auto event = impls.find("VipMSC.Event");
  check.expect(event != impls.end() &&
                   std::find(event->second.begin(), event->second.end(), "VipMSC.VIP") != event->second.end(),
               "VIP is not an Event implementor");

  const std::string text = "msc x {\n  instance a {\n    vip b;\n    out m to c;\n  }\n  instance c { in m from a; }\n}\n";
  auto analysis = sub.analyze(text, "x.vmsc");
  check.expect(analysis.outcome.root.has_value(), "VIP chart does not parse");
  if (analysis.outcome.root) {
    const SyntaxNode& inst = analysis.outcome.root->children.front();
    check.expect(!inst.children.empty() && inst.children[0].production == "VipMSC.VIP" &&
                     inst.children[0].text("name") == "b",
                 "VIP event not dispatched through Event");
  }
  const auto& outline = analysis.features.outline;
  check.expect(find_symbol(outline, "Instance a") != nullptr, "inherited Instance segment inactive");
  check.expect(find_symbol(outline, "VIP b") != nullptr, "new VIP segment inactive");
  check.expect(find_symbol(outline, "m to c") != nullptr, "SendEvent override inactive in sub");
  check.expect(find_symbol(outline, "Send to c:m") == nullptr, "super SendEvent label survived override");

  auto superText = "msc x {\n  instance a {\n    out m to c;\n  }\n  instance c { in m from a; }\n}\n";
  auto superOutline = super.analyze(superText, "x.msc").features.outline;
  check.expect(find_symbol(superOutline, "Send to c:m") != nullptr, "super language lost its SendEvent label");
  check.expect(find_symbol(superOutline, "m to c") == nullptr, "sub override leaked into super language");
}

void diagnostics_mutations(Check& check) {
  LanguageService service = open_service("msc.mctool", check);
  const std::string base = testing::mail_chart();
  struct Mutation {
    int line;
    std::string from;
    std::string to;
  };
  const std::vector<Mutation> mutations = {
      {4, "out message to receiver;", "out message receiver;"},
      {9, "in message from sender;", "in message form sender;"},
      {3, "instance sender{", "instance {"},
      {13, "out response to sender;", "out response from sender;"},
      {10, "condition inbox {", "condition inbox shared {"},
  };
  int hit = 0;
  for (const auto& m : mutations) {
    std::string original = testing::line_of(base, m.line);
    auto at = original.find(m.from);
    if (at == std::string::npos) {
      check.expect(false, "line " + std::to_string(m.line) + " does not contain '" + m.from + "'");
      continue;
    }
    std::string mutated = original;
    mutated.replace(at, m.from.size(), m.to);
    auto analysis = service.analyze(testing::replace_line(base, m.line, mutated), "mail.msc");
    bool found = std::any_of(analysis.features.diagnostics.begin(), analysis.features.diagnostics.end(),
                             [&](const ProblemReport& r) { return r.severity == Severity::Error && r.line == m.line; });
    check.expect(found, "no error on mutated line " + std::to_string(m.line));
    hit += found;
  }
  check.note(std::to_string(hit) + "/" + std::to_string(mutations.size()) + " mutations located");
}

void format_round_trip(Check& check) {
  LanguageService service = open_service("msc.mctool", check);
  std::mt19937 rng(kRoundTripSeed);
  int equal = 0;
  int idempotent = 0;
  for (int i = 0; i < kRoundTripDocuments; ++i) {
    std::string doc = testing::random_chart(rng);
    auto first = service.engine().parse(doc, "r.msc");
    if (!first.root) {
      check.expect(false, "generated document " + std::to_string(i) + " does not parse");
      continue;
    }
    auto once = service.format(doc, "r.msc");
    if (!once) {
      check.expect(false, "document " + std::to_string(i) + " cannot be formatted");
      continue;
    }
    auto second = service.engine().parse(once.value(), "r.msc");
    bool same = second.root && structurally_equal(*first.root, *second.root);
    auto twice = service.format(once.value(), "r.msc");
    bool fixed = twice.ok() && twice.value() == once.value();
    check.expect(same, "document " + std::to_string(i) + ": reparse differs");
    check.expect(fixed, "document " + std::to_string(i) + ": format not idempotent");
    equal += same;
    idempotent += fixed;
  }
  check.note(std::to_string(equal) + " equal, " + std::to_string(idempotent) + " idempotent of " +
             std::to_string(kRoundTripDocuments));
}

void parser_oracle(Check& check) {
  std::mt19937 rng(kOracleSeed);
  int pairs = 0;
  int agree = 0;
  int accepted = 0;
  int rejectedGrammars = 0;
  int unsound = 0;
  while (pairs < kOraclePairs) {
    GrammarFragment grammar = testing::random_grammar(rng);
    auto language = testing::compose_single(grammar);
    if (!language) {
      check.expect(false, "random grammar failed to compose");
      return;
    }
    auto engine = ParserEngine::build(language.value());
    if (!engine) {
      ++rejectedGrammars;  // left recursive
      continue;
    }
    auto tokens = testing::random_input(grammar, rng, kOracleMaxTokens);
    bool expected = testing::ordered_choice_accepts(grammar, tokens);
    bool actual = engine->parse(testing::join_tokens(tokens), "in.txt").root.has_value();
    if (actual == expected) {
      ++agree;
    } else if (agree + 1 == pairs + 1) {
      check.expect(false, "first mismatch: " + meta_pretty_print(grammar) + " on '" + testing::join_tokens(tokens) + "'");
    }
    if (actual && !testing::context_free_accepts(grammar, tokens)) ++unsound;
    accepted += actual;
    ++pairs;
  }
  check.equal(agree, pairs, "acceptance mismatches");
  check.equal(unsound, 0, "accepted inputs outside the context-free language");
  check.note(std::to_string(agree) + "/" + std::to_string(pairs) + " agree, " + std::to_string(accepted) +
             " accepted, " + std::to_string(rejectedGrammars) + " left-recursive grammars skipped");
}

void actions(Check& check) {
  LanguageService service = open_service("msc.mctool", check);
  auto trace = service.editor_action("Generate Trace", {testing::mail_chart(), "mail.msc", {}});
  const auto* traceFiles = std::get_if<NewFiles>(&trace.value);
  check.expect(traceFiles && traceFiles->files.size() == 1, "trace produced no file");
  if (traceFiles && traceFiles->files.size() == 1) {
    check.equal(traceFiles->files.begin()->second,
                std::string("sender.out message\nreceiver.in message\nreceiver.out response\nsender.in response\n"),
                "trace sequence differs");
  }

  std::map<std::string, std::string> files = {
      {testing::corpus_path("compose/login.msc").string(), "compose"},
      {testing::corpus_path("compose/lookup.msc").string(), "compose"}};
  auto composed = service.navigator_action("Compose", files);
  const auto* merged = std::get_if<NewFiles>(&composed.value);
  check.expect(merged && merged->files.size() == 1, "compose produced no file");
  if (merged && merged->files.size() == 1) {
    check.equal(merged->files.begin()->second, testing::read_corpus("compose/login.expected"),
                "merged chart differs from the hand-merged file");
  }
}

struct Criterion {
  const char* name;
  double limitMs;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace fragmentc

int main() {
  using namespace fragmentc;
  const std::vector<Criterion> criteria = {
      {"grammar-fidelity", kSingleCaseLimitMs, grammar_fidelity},
      {"composition-fidelity", kSingleCaseLimitMs, composition_fidelity},
      {"end-to-end-example", kSingleCaseLimitMs, end_to_end},
      {"inheritance-semantics", 0, inheritance},
      {"diagnostics-mutations", 0, diagnostics_mutations},
      {"format-round-trip", kRoundTripLimitMs, format_round_trip},
      {"parser-oracle", 0, parser_oracle},
      {"actions", 0, actions},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Check check;
    auto start = Clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (c.limitMs > 0 && ms >= c.limitMs) {
      check.expect(false, "took " + std::to_string(ms) + " ms, limit " + std::to_string(c.limitMs) + " ms");
    }
    std::ostringstream line;
    line << (check.passed() ? "PASS " : "FAIL ") << c.name << " (" << static_cast<long>(ms) << " ms)";
    if (!check.summary().empty()) line << ": " << check.summary();
    std::cout << line.str() << "\n";
    failed += !check.passed();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
