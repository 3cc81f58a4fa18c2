#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

#include "fragmentc/grammar_loader.hpp"
#include "fragmentc/lsp/transport.hpp"

namespace fragmentc {
namespace {

using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "fragmentc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string corpus(std::string_view rel) { return testing::corpus_path(rel).string(); }
std::string grammar_root() { return testing::corpus_dir().string(); }

TEST(CliCheck, MscGrammarPasses) {
  auto r = run_cli({"check", corpus("mc/examples/msc/msc/MSC.mc")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(r.err.empty());
}

TEST(CliCheck, SubgrammarUsesGrammarPath) {
  auto r = run_cli({"--grammar-path", grammar_root(), "check", corpus("mc/examples/msc/msc/VipMSC.mc")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(CliCheck, DanglingNonterminalAndEmptyFile) {
  testing::TempDir dir;
  auto bad = dir.write("Bad.mc", "grammar Bad {\n  A = Missing;\n}\n");
  auto r = run_cli({"check", bad.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_EQ(r.err, "error " + bad.string() + ":2:1 unresolved nonterminal Missing in production A\n");

  auto empty = dir.write("Empty.mc", "");
  r = run_cli({"check", empty.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("no grammar found"), std::string::npos);

  r = run_cli({"--json", "check", bad.string()});
  auto reports = json::parse(r.err);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0]["line"], 2);
  EXPECT_EQ(reports[0]["severity"], "error");
}

TEST(CliCompose, SummaryAndManifest) {
  auto r = run_cli({"compose", corpus("msc.mctool")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("keywords 21\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("unbound externals 0\n"), std::string::npos);

  r = run_cli({"--json", "compose", corpus("msc.mctool")});
  ASSERT_EQ(r.code, cli::kExitOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["summary"]["keywords"], 21);
  EXPECT_EQ(doc["manifest"]["languages"][0]["extensions"], json::array({".msc"}));
  EXPECT_EQ(doc["manifest"]["languages"][0]["fragments"], json::array({"MSC", "JavaDSL"}));
}

TEST(CliCompose, MissingBindingFails) {
  testing::TempDir dir;
  std::string text = testing::read_corpus("msc.mctool");
  auto cut = text.find("  mc.examples.msc.java.JavaDSL.MethodDeclaration");
  text.erase(cut, text.find(';', cut) + 2 - cut);
  auto tool = dir.write("partial.mctool", text);
  auto r = run_cli({"--grammar-path", grammar_root(), "compose", tool.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("unbound external Method"), std::string::npos) << r.err;
}

TEST(CliCompose, ConfigWithoutConcept) {
  testing::TempDir dir;
  dir.write("Tiny.mc", "grammar Tiny { Doc = \"doc\" name:IDENT; }\n");
  auto tool = dir.write("tiny.mctool", "rootfactory T for R { Tiny.Doc doc <<start>>; }\n");
  auto r = run_cli({"--json", "compose", tool.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["summary"]["keywords"], 0);
  EXPECT_EQ(doc["summary"]["workflows"], json::array());
  EXPECT_FALSE(doc["summary"]["formatAvailable"].get<bool>());
}

TEST(CliCompose, EnvironmentGrammarPath) {
  testing::TempDir dir;
  auto tool = dir.write("msc.mctool", testing::read_corpus("msc.mctool"));
  setenv(std::string(kGrammarPathEnv).c_str(), grammar_root().c_str(), 1);
  auto r = run_cli({"compose", tool.string()});
  unsetenv(std::string(kGrammarPathEnv).c_str());
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  r = run_cli({"compose", tool.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
}

TEST(CliFeatures, MailChartOutline) {
  auto r = run_cli({"features", corpus("msc.mctool"), corpus("documents/mail.msc")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["outline"][0]["label"], "Instance sender");
  EXPECT_EQ(doc["outline"][0]["children"][0]["label"], "Send to receiver:message");
  EXPECT_TRUE(doc["diagnostics"].empty());
  EXPECT_EQ(run_cli({"features", corpus("msc.mctool"), corpus("documents/mail.msc")}).out, r.out);
}

TEST(CliFeatures, EmptyAndCommentOnlyDocuments) {
  testing::TempDir dir;
  auto empty = dir.write("empty.msc", "");
  auto r = run_cli({"features", corpus("msc.mctool"), empty.string()});
  ASSERT_EQ(r.code, cli::kExitOk);
  auto doc = json::parse(r.out);
  EXPECT_TRUE(doc["highlights"].empty());
  EXPECT_TRUE(doc["folds"].empty());
  EXPECT_TRUE(doc["outline"].empty());
  ASSERT_EQ(doc["diagnostics"].size(), 1u);
  EXPECT_EQ(doc["diagnostics"][0]["severity"], "error");

  auto comment = dir.write("comment.msc", "// nothing here\n");
  doc = json::parse(run_cli({"features", corpus("msc.mctool"), comment.string()}).out);
  ASSERT_EQ(doc["highlights"].size(), 1u);
  EXPECT_EQ(doc["highlights"][0]["category"], "comment");

  auto out = dir.path() / "features.json";
  r = run_cli({"--out", out.string(), "features", corpus("msc.mctool"), corpus("documents/mail.msc")});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(read_file(out).has_value());
}

TEST(CliParseAndFormat, TreeAndLayout) {
  auto r = run_cli({"parse", corpus("msc.mctool"), corpus("documents/mail.msc")});
  ASSERT_EQ(r.code, cli::kExitOk);
  auto tree = json::parse(r.out);
  EXPECT_EQ(tree["production"], "MSC.MSC");
  EXPECT_EQ(tree["attributes"]["name"], "mail");

  r = run_cli({"format", corpus("msc.mctool"), corpus("documents/mail.msc")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out.substr(0, 11), "msc mail {\n");
}

TEST(CliAction, TraceAndCompose) {
  testing::TempDir dir;
  auto mail = dir.write("mail.msc", testing::mail_chart());
  auto r = run_cli({"action", corpus("msc.mctool"), "Generate Trace", mail.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto trace = read_file(dir.path() / "mail.trace");
  ASSERT_TRUE(trace);
  EXPECT_EQ(*trace, "sender.out message\nreceiver.in message\nreceiver.out response\nsender.in response\n");

  auto a = dir.write("a/login.msc", testing::read_corpus("compose/login.msc"));
  auto b = dir.write("a/lookup.msc", testing::read_corpus("compose/lookup.msc"));
  r = run_cli({"action", corpus("msc.mctool"), "Compose", a.string(), b.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(read_file(dir.path() / "a/login.composed.msc"), testing::read_corpus("compose/login.expected"));
}

TEST(CliAction, UnknownActionAndBadSelection) {
  auto r = run_cli({"action", corpus("msc.mctool"), "Nope", corpus("documents/mail.msc")});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("unknown action Nope"), std::string::npos);
  r = run_cli({"action", corpus("msc.mctool"), "Generate Trace", corpus("documents/mail.msc"), "--selection", "x"});
  EXPECT_EQ(r.code, cli::kExitInput);
}

TEST(CliBundle, TwoToolsAndConflict) {
  auto r = run_cli({"bundle", corpus("msc.mctool"), corpus("vipmsc.mctool")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  auto manifest = json::parse(r.out);
  ASSERT_EQ(manifest["languages"].size(), 2u);
  EXPECT_EQ(manifest["languages"][1]["extensions"], json::array({".vmsc"}));

  r = run_cli({"bundle", corpus("msc.mctool"), corpus("msc.mctool")});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find(".msc"), std::string::npos);
}

TEST(CliServe, BundleSessionOverStdio) {
  testing::TempDir dir;
  auto bundle = run_cli({"bundle", corpus("msc.mctool"), corpus("vipmsc.mctool")});
  auto manifest = dir.write("bundle.json", bundle.out);
  auto log = dir.path() / "server.log";

  std::string input = lsp::frame({{"jsonrpc", "2.0"}, {"id", 1}, {"method", "initialize"}, {"params", json::object()}}) +
                      lsp::frame({{"jsonrpc", "2.0"},
                                  {"method", "textDocument/didOpen"},
                                  {"params", {{"textDocument", {{"uri", "file:///w/x.vmsc"}, {"version", 1},
                                                                {"text", "msc x { instance a { vip b; } }"}}}}}}) +
                      lsp::frame({{"jsonrpc", "2.0"}, {"id", 2}, {"method", "shutdown"}}) +
                      lsp::frame({{"jsonrpc", "2.0"}, {"method", "exit"}});
  auto r = run_cli({"--log-file", log.string(), "serve", manifest.string()}, input);
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream replies(r.out);
  std::vector<json> messages;
  while (auto body = lsp::read_message(replies)) messages.push_back(json::parse(*body));
  ASSERT_EQ(messages.size(), 3u);
  EXPECT_TRUE(messages[1]["params"]["diagnostics"].empty());
  auto logged = read_file(log);
  ASSERT_TRUE(logged);
  EXPECT_NE(logged->find("initialize"), std::string::npos);
}

TEST(CliServe, InvalidConfigFailsBeforeServing) {
  testing::TempDir dir;
  auto bad = dir.write("bad.mctool", "rootfactory X for Y { }");
  auto r = run_cli({"serve", bad.string()});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliUsage, MissingSubcommand) {
  EXPECT_EQ(run_cli({}).code, cli::kExitInput);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace fragmentc
