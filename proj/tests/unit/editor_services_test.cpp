#include <algorithm>
#include <map>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "grammar_oracle.hpp"
#include "msc_generator.hpp"

#include "fragmentc/demo/msc_components.hpp"
#include "fragmentc/editor_services.hpp"
#include "fragmentc/feature_dump.hpp"
#include "fragmentc/grammar_frontend.hpp"

namespace fragmentc {
namespace {

using testing::mail_chart;
using testing::msc_service;

const OutlineSymbol* find_symbol(const std::vector<OutlineSymbol>& symbols, std::string_view label) {
  for (const auto& s : symbols) {
    if (s.label == label) return &s;
    if (const auto* hit = find_symbol(s.children, label)) return hit;
  }
  return nullptr;
}

std::vector<std::array<int, 2>> fold_lines(const std::vector<FoldingRange>& folds) {
  std::vector<std::array<int, 2>> lines;
  for (const auto& f : folds) lines.push_back({f.span.start.line, f.span.end.line});
  return lines;
}

TEST(Highlight, MailChartKeywordCounts) {
  auto outcome = msc_service().engine().parse(mail_chart(), "mail.msc");
  ASSERT_TRUE(outcome.root);
  std::map<std::string, int> counts;
  for (const auto& h : highlight(outcome.tokens)) {
    ASSERT_EQ(h.category, HighlightCategory::Keyword);
    ++counts[std::string(mail_chart().substr(h.span.start.offset, h.span.end.offset - h.span.start.offset))];
  }
  std::map<std::string, int> expected = {{"msc", 1}, {"instance", 2}, {"out", 2},    {"in", 2},
                                         {"to", 2},  {"from", 2},     {"condition", 1}, {"public", 1},
                                         {"boolean", 1}, {"return", 1}};
  EXPECT_EQ(counts, expected);
}

TEST(Highlight, EmptyAndCommentOnly) {
  EXPECT_TRUE(highlight({}).empty());
  auto tokens = lex("/* all\n comment */", msc_service().language(), "MSC");
  auto spans = highlight(tokens);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans.front().category, HighlightCategory::Comment);
  EXPECT_EQ(spans.front().span.start.offset, 0u);
  EXPECT_EQ(spans.front().span.end.offset, 18u);
}

TEST(FoldingRanges, MailChartRegions) {
  auto outcome = msc_service().engine().parse(mail_chart(), "mail.msc");
  ASSERT_TRUE(outcome.root);
  const auto& cfg = msc_service().language().effectiveEditor;
  auto folds = folding_ranges(*outcome.root, cfg, mail_chart());
  EXPECT_EQ(fold_lines(folds), (std::vector<std::array<int, 2>>{{1, 19}, {3, 6}, {8, 14}, {10, 12}}));
  EXPECT_EQ(folds[0].placeholder, "msc mail{..");
  EXPECT_EQ(folds[1].placeholder, "instance sender{..");
  EXPECT_EQ(folds[3].placeholder, "condition inbox {..");
}

TEST(FoldingRanges, SingleLineAndEmptyFoldable) {
  std::string text = "msc m{\n  instance x{}\n}";
  auto outcome = msc_service().engine().parse(text, "m.msc");
  ASSERT_TRUE(outcome.root);
  auto folds = folding_ranges(*outcome.root, msc_service().language().effectiveEditor, text);
  EXPECT_EQ(fold_lines(folds), (std::vector<std::array<int, 2>>{{1, 3}}));
  EffectiveEditorConfig none;
  EXPECT_TRUE(folding_ranges(*outcome.root, none, text).empty());
}

TEST(Outline, SendEventLabelUnderSender) {
  auto outcome = msc_service().engine().parse(mail_chart(), "mail.msc");
  ASSERT_TRUE(outcome.root);
  auto symbols = outline(*outcome.root, msc_service().language().effectiveEditor, mail_chart());
  const auto* sender = find_symbol(symbols, "Instance sender");
  ASSERT_NE(sender, nullptr);
  ASSERT_FALSE(sender->children.empty());
  EXPECT_EQ(sender->children.front().label, "Send to receiver:message");
  EXPECT_EQ(sender->children.front().iconPath, "pict/arrow.gif");
  EXPECT_NE(find_symbol(symbols, "Condition inbox"), nullptr);
  EXPECT_NE(find_symbol(symbols, "Method checkInbox"), nullptr);
}

TEST(Outline, NoSegments) {
  auto outcome = msc_service().engine().parse(mail_chart(), "mail.msc");
  ASSERT_TRUE(outcome.root);
  EXPECT_TRUE(outline(*outcome.root, EffectiveEditorConfig{}, mail_chart()).empty());
}

TEST(Outline, PersonSegment) {
  auto people = parse_grammar(
      "grammar People { Person = \"person\" name:IDENT;\n"
      "concept texteditor { segment: Person (\"pict/person.gif\") show: \"Person \" name; } }",
      "People.mc");
  ASSERT_TRUE(people.ok());
  auto lang = testing::compose_single(people.value());
  ASSERT_TRUE(lang.ok());
  auto engine = ParserEngine::build(lang.value());
  ASSERT_TRUE(engine.ok());
  auto outcome = engine->parse("person Alice", "p.txt");
  ASSERT_TRUE(outcome.root);
  auto symbols = outline(*outcome.root, lang->effectiveEditor);
  ASSERT_EQ(symbols.size(), 1u);
  EXPECT_EQ(symbols.front().label, "Person Alice");
  EXPECT_EQ(symbols.front().iconPath, "pict/person.gif");
}

TEST(RenderSegmentLabel, Templates) {
  using K = TemplateItem::Kind;
  SyntaxNode send;
  send.production = "MSC.SendEvent";
  send.attributes["receiver"] = AttrScalar(std::string("receiver"));
  send.attributes["message"] = AttrScalar(std::string("message"));
  SegmentDef seg{"SendEvent", "pict/arrow.gif",
                 {{K::Literal, "Send to "}, {K::AttributeRef, "receiver"}, {K::Literal, ":"}, {K::AttributeRef, "message"}},
                 1};
  EXPECT_EQ(render_segment_label(seg, send), "Send to receiver:message");

  SegmentDef literal{"SendEvent", "", {{K::Literal, "X"}}, 1};
  EXPECT_EQ(render_segment_label(literal, send), "X");

  auto condition = msc_service().engine().parse("condition c shared a , b ;", "c.msc", "Condition");
  ASSERT_TRUE(condition.root);
  SegmentDef list{"Condition", "", {{K::AttributeRef, "sharedWith"}}, 1};
  EXPECT_EQ(render_segment_label(list, *condition.root), "a, b");
  SegmentDef absent{"Condition", "", {{K::Literal, "["}, {K::AttributeRef, "missing"}, {K::Literal, "]"}}, 1};
  EXPECT_EQ(render_segment_label(absent, *condition.root), "[]");
}

TEST(RenderSegmentLabel, NodeValuedAttributeUsesSourceSlice) {
  using K = TemplateItem::Kind;
  std::string text = "x  +  y > 3";
  auto outcome = msc_service().engine().parse(text, "e.txt", "Expression");
  ASSERT_TRUE(outcome.root);
  SegmentDef seg{"Expression", "", {{K::AttributeRef, "left"}}, 1};
  EXPECT_EQ(render_segment_label(seg, *outcome.root, text), "x  +  y");
}

TEST(Diagnostics, MissingToIsParserErrorOnly) {
  std::string text = testing::replace_line(mail_chart(), 4, "    out message receiver;");
  auto outcome = msc_service().engine().parse(text, "mail.msc");
  auto reports = diagnostics(outcome, msc_service().passes(), "mail.msc");
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) EXPECT_EQ(r.source, "parser");
  EXPECT_EQ(reports.front().severity, Severity::Error);
  EXPECT_EQ(reports.front().line, 4);
}

TEST(Diagnostics, CleanChartWithCheckPass) {
  auto outcome = msc_service().engine().parse(mail_chart(), "mail.msc");
  EXPECT_TRUE(diagnostics(outcome, msc_service().passes(), "mail.msc").empty());
}

TEST(Diagnostics, UnknownInstanceFromCheck) {
  std::string text = testing::replace_line(mail_chart(), 4, "    out message to ghost;");
  auto outcome = msc_service().engine().parse(text, "mail.msc");
  ASSERT_TRUE(outcome.root);
  auto reports = diagnostics(outcome, msc_service().passes(), "mail.msc");
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports.front().message, "unknown instance ghost");
  EXPECT_EQ(reports.front().line, 4);
  EXPECT_EQ(reports.front().file, "mail.msc");
}

TEST(Diagnostics, DuplicateInstanceFromSymtab) {
  std::string text = "msc m {\n instance a { }\n instance a { }\n}";
  auto outcome = msc_service().engine().parse(text, "m.msc");
  auto reports = diagnostics(outcome, msc_service().passes(), "m.msc");
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports.front().message, "duplicate instance a");
  EXPECT_EQ(reports.front().line, 3);
}

TEST(Diagnostics, PassesRunInOrderAndOnlyWithTree) {
  std::vector<std::string> calls;
  std::vector<WorkflowPass> passes = {
      {"first", [&](const SyntaxNode&, std::string_view, const DocumentLookup&) {
         calls.push_back("first");
         return std::vector<ProblemReport>{make_warning("w1", "f", 1, 1, "first")};
       }},
      {"second", [&](const SyntaxNode&, std::string_view, const DocumentLookup&) {
         calls.push_back("second");
         return std::vector<ProblemReport>{make_warning("w2", "f", 1, 1, "second")};
       }}};
  auto good = msc_service().engine().parse("msc m {}", "m.msc");
  auto reports = diagnostics(good, passes, "m.msc");
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].message, "w1");
  EXPECT_EQ(reports[1].message, "w2");
  calls.clear();
  auto bad = msc_service().engine().parse("msc m {", "m.msc");
  diagnostics(bad, passes, "m.msc");
  EXPECT_TRUE(calls.empty());
}

std::string format_text(std::string_view text) {
  auto formatted = msc_service().format(text, "doc.msc");
  EXPECT_TRUE(formatted.ok()) << text;
  return formatted.ok() ? formatted.value() : std::string();
}

TEST(Format, MailChartRoundTrip) {
  auto before = msc_service().engine().parse(mail_chart(), "mail.msc");
  std::string formatted = format_text(mail_chart());
  auto after = msc_service().engine().parse(formatted, "mail.msc");
  ASSERT_TRUE(after.root) << formatted;
  EXPECT_TRUE(structurally_equal(*before.root, *after.root));
  EXPECT_NE(formatted.find("    return receiver.messages > 0;\n"), std::string::npos) << formatted;
}

TEST(Format, OneLineInputGetsBlockLayout) {
  std::string formatted = format_text("msc m{instance a{}}");
  EXPECT_EQ(formatted, "msc m {\n  instance a {\n  }\n}\n");
  auto a = msc_service().engine().parse("msc m{instance a{}}", "m.msc");
  auto b = msc_service().engine().parse(formatted, "m.msc");
  ASSERT_TRUE(a.root && b.root);
  EXPECT_TRUE(structurally_equal(*a.root, *b.root));
}

TEST(Format, CommentsAreKept) {
  std::string formatted = format_text("msc m { // head\n instance a { /* in */ out x to a; } }");
  EXPECT_NE(formatted.find("// head\n"), std::string::npos) << formatted;
  EXPECT_NE(formatted.find("/* in */"), std::string::npos) << formatted;
  EXPECT_EQ(format_text(formatted), formatted);
}

TEST(Format, IdempotentOnCorpus) {
  std::string once = format_text(mail_chart());
  EXPECT_EQ(format_text(once), once);
}

TEST(Format, UnavailableOnErrors) {
  EXPECT_FALSE(msc_service().format("msc m {", "m.msc").ok());
}

TEST(EditorServicesProperty, FeaturesDoNotMutateTree) {
  std::mt19937 rng(51);
  const auto& cfg = msc_service().language().effectiveEditor;
  for (int i = 0; i < 30; ++i) {
    std::string text = testing::random_chart(rng);
    auto outcome = msc_service().engine().parse(text, "r.msc");
    ASSERT_TRUE(outcome.root);
    const SyntaxNode copy = *outcome.root;
    auto json_before = tree_to_json(*outcome.root);
    highlight(outcome.tokens);
    folding_ranges(*outcome.root, cfg, text);
    outline(*outcome.root, cfg, text);
    diagnostics(outcome, msc_service().passes(), "r.msc");
    format(*outcome.root, outcome.tokens, msc_service().printers(), msc_service().engine().lexer());
    EXPECT_TRUE(structurally_equal(copy, *outcome.root));
    EXPECT_EQ(tree_to_json(*outcome.root), json_before);
  }
}

void expect_within(const std::vector<OutlineSymbol>& symbols, const Span& outer) {
  for (const auto& s : symbols) {
    EXPECT_TRUE(outer.contains(s.span));
    expect_within(s.children, s.span);
  }
}

TEST(EditorServicesProperty, HighlightCompletenessAndBounds) {
  std::mt19937 rng(52);
  for (int i = 0; i < 50; ++i) {
    std::string text = testing::random_chart(rng);
    auto analysis = msc_service().analyze(text, "r.msc");
    ASSERT_TRUE(analysis.outcome.root);
    std::size_t keywords = 0;
    std::size_t comments = 0;
    for (const auto& t : analysis.outcome.tokens) {
      keywords += t.kind == TokenKind::Keyword;
      comments += t.is_comment();
    }
    std::size_t keywordSpans = 0;
    std::size_t commentSpans = 0;
    for (std::size_t k = 0; k < analysis.features.highlights.size(); ++k) {
      const auto& h = analysis.features.highlights[k];
      (h.category == HighlightCategory::Keyword ? keywordSpans : commentSpans)++;
      if (k > 0) EXPECT_LE(analysis.features.highlights[k - 1].span.end.offset, h.span.start.offset);
    }
    EXPECT_EQ(keywordSpans, keywords);
    EXPECT_EQ(commentSpans, comments);

    Span document{{1, 1, 0}, LineIndex(text).position(text.size())};
    for (const auto& f : analysis.features.folds) {
      EXPECT_TRUE(document.contains(f.span));
      EXPECT_LT(f.span.start.line, f.span.end.line);
    }
    expect_within(analysis.features.outline, document);
  }
}

TEST(EditorServicesProperty, SubgrammarFeaturesAreSuperset) {
  std::mt19937 rng(53);
  for (int i = 0; i < 30; ++i) {
    std::string text = testing::random_chart(rng);
    auto super = msc_service().analyze(text, "r.msc");
    auto sub = testing::vip_service().analyze(text, "r.vmsc");
    ASSERT_TRUE(super.outcome.root && sub.outcome.root);
    for (const auto& h : super.features.highlights) {
      EXPECT_NE(std::find(sub.features.highlights.begin(), sub.features.highlights.end(), h),
                sub.features.highlights.end());
    }
    for (const auto& f : super.features.folds) {
      EXPECT_NE(std::find(sub.features.folds.begin(), sub.features.folds.end(), f), sub.features.folds.end());
    }
  }
}

TEST(FeatureDump, JsonShape) {
  auto analysis = msc_service().analyze(mail_chart(), "mail.msc");
  auto json = features_to_json(analysis.features);
  EXPECT_EQ(json["folds"][0]["span"], nlohmann::json::array({1, 1, 19, 2}));
  EXPECT_TRUE(json["diagnostics"].empty());
  EXPECT_EQ(json.size(), 4u);
  std::string dumped = dump_features(analysis.features);
  EXPECT_LT(dumped.find("\"diagnostics\""), dumped.find("\"folds\""));
}

}  // namespace
}  // namespace fragmentc
