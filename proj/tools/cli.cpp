#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>

#include <fragmentc/composer.hpp>
#include <fragmentc/demo/msc_components.hpp>
#include <fragmentc/feature_dump.hpp>
#include <fragmentc/grammar_frontend.hpp>
#include <fragmentc/grammar_loader.hpp>
#include <fragmentc/language_service.hpp>
#include <fragmentc/lsp/server.hpp>

namespace fragmentc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::vector<std::string> grammarPath;
  std::string out;
  bool json = false;
  std::string logFile;
};

class Command {
 public:
  Command(const Options& opts, std::istream& in, std::ostream& out, std::ostream& err)
      : opts_(opts), in_(in), out_(out), err_(err) {}

  int check(const std::vector<std::string>& files) {
    std::vector<ProblemReport> all;
    for (const auto& file : files) {
      auto reports = check_file(file);
      all.insert(all.end(), reports.begin(), reports.end());
    }
    print_reports(all);
    return has_errors(all) ? kExitInput : kExitOk;
  }

  int compose(const std::string& toolPath) {
    auto service = open(toolPath);
    if (!service) return kExitInput;
    const auto& lang = service->language();
    std::vector<BundleEntry> entries{{nullptr, &lang, lang.extensions}};
    auto manifest = bundle_tools(entries);
    if (!manifest) {
      print_reports(manifest.problems());
      return kExitInput;
    }
    manifest.value().languages.front().config = fs::absolute(toolPath).string();
    json summary = {{"language", lang.name},
                    {"start", lang.startSymbol},
                    {"fragments", lang.sourceFragments},
                    {"productions", lang.productions.size()},
                    {"keywords", lang.effectiveEditor.keywords.size()},
                    {"unboundExternals", 0},
                    {"workflows", lang.effectiveEditor.workflows},
                    {"formatAvailable", lang.effectiveEditor.formatAvailable}};
    std::string manifestText = manifest_to_json(manifest.value());
    if (opts_.json) {
      emit(json{{"summary", summary}, {"manifest", json::parse(manifestText)}}.dump(2) + "\n");
      return kExitOk;
    }
    std::ostringstream text;
    text << "language " << lang.name << "\n"
         << "start " << lang.startSymbol << "\n"
         << "fragments " << join(lang.sourceFragments) << "\n"
         << "productions " << lang.productions.size() << "\n"
         << "keywords " << lang.effectiveEditor.keywords.size() << "\n"
         << "unbound externals 0\n"
         << "workflows " << join(lang.effectiveEditor.workflows) << "\n"
         << "format " << (lang.effectiveEditor.formatAvailable ? "available" : "unavailable") << "\n";
    if (opts_.out.empty()) {
      out_ << text.str() << manifestText;
    } else {
      out_ << text.str();
      write(opts_.out, manifestText);
    }
    return kExitOk;
  }

  int parse(const std::string& toolPath, const std::string& docPath) {
    auto service = open(toolPath);
    if (!service) return kExitInput;
    auto text = read_file(docPath);
    if (!text) return fail_read(docPath);
    auto outcome = service->engine().parse(*text, docPath);
    if (!outcome.root) {
      print_reports(outcome.problems);
      return kExitInput;
    }
    emit(tree_to_json(*outcome.root).dump(2) + "\n");
    return kExitOk;
  }

  int features(const std::string& toolPath, const std::string& docPath) {
    auto service = open(toolPath);
    if (!service) return kExitInput;
    auto text = read_file(docPath);
    if (!text) return fail_read(docPath);
    auto analysis = service->analyze(*text, docPath);
    emit(dump_features(analysis.features));
    return kExitOk;
  }

  int format(const std::string& toolPath, const std::string& docPath) {
    auto service = open(toolPath);
    if (!service) return kExitInput;
    auto text = read_file(docPath);
    if (!text) return fail_read(docPath);
    auto formatted = service->format(*text, docPath);
    if (!formatted) {
      print_reports(formatted.problems());
      return kExitInput;
    }
    emit(formatted.value());
    return kExitOk;
  }

  int action(const std::string& toolPath, const std::string& id, const std::vector<std::string>& files,
             const std::string& selection) {
    auto service = open(toolPath);
    if (!service) return kExitInput;
    const auto& cfg = service->language().effectiveEditor;
    auto matches = [&](const NamedAction& a) { return a.actionId == id || a.displayName == id; };
    bool editor = std::any_of(cfg.menuItems.begin(), cfg.menuItems.end(), matches);
    bool navigator = std::any_of(cfg.navigatorItems.begin(), cfg.navigatorItems.end(), matches);
    if (!editor && !navigator) {
      err_ << "error: unknown action " << id << "\n";
      return kExitInput;
    }
    std::vector<ActionResult> results;
    if (editor) {
      for (const auto& file : files) {
        auto text = read_file(file);
        if (!text) return fail_read(file);
        EditorActionRequest request{*text, file, {}};
        if (!parse_selection(selection, *text, request.selection)) {
          err_ << "error: malformed selection " << selection << " (expected line:col-line:col)\n";
          return kExitInput;
        }
        results.push_back(service->editor_action(id, request));
      }
    } else {
      std::map<std::string, std::string> selected;
      for (const auto& file : files) selected[file] = fs::path(file).parent_path().string();
      results.push_back(service->navigator_action(id, selected));
    }

    bool failed = false;
    std::size_t artifacts = 0;
    for (const auto& r : results) {
      if (const auto* f = std::get_if<NewFiles>(&r.value)) artifacts += f->files.size();
    }
    for (const auto& r : results) {
      if (const auto* rep = std::get_if<Reports>(&r.value)) {
        print_reports(rep->reports);
        failed = failed || r.failed();
      } else if (const auto* f = std::get_if<NewFiles>(&r.value)) {
        for (const auto& [path, content] : f->files) {
          std::string target = (!opts_.out.empty() && artifacts == 1) ? opts_.out : path;
          write(target, content);
          out_ << "wrote " << target << "\n";
        }
      } else if (const auto* e = std::get_if<DocumentEdits>(&r.value)) {
        out_ << e->edits.size() << " edit(s) for " << e->path << "\n";
      }
    }
    return failed ? kExitInput : kExitOk;
  }

  int bundle(const std::vector<std::string>& toolPaths) {
    std::vector<LanguageService> services;
    std::vector<ToolConfig> configs;
    for (const auto& path : toolPaths) {
      auto service = open(path);
      if (!service) return kExitInput;
      services.push_back(service.value());
      auto cfg = load_tool_config(path);
      configs.push_back(cfg.value());
      configs.back().origin = fs::absolute(path).string();
    }
    std::vector<BundleEntry> entries;
    for (std::size_t i = 0; i < services.size(); ++i) {
      entries.push_back({&configs[i], &services[i].language(), services[i].language().extensions});
    }
    auto manifest = bundle_tools(entries);
    if (!manifest) {
      print_reports(manifest.problems());
      return kExitInput;
    }
    emit(manifest_to_json(manifest.value()));
    return kExitOk;
  }

  int serve(const std::string& path) {
    std::vector<lsp::ServedLanguage> languages;
    if (fs::path(path).extension() == ".json") {
      auto text = read_file(path);
      if (!text) return fail_read(path);
      auto manifest = manifest_from_json(*text, path);
      if (!manifest) {
        print_reports(manifest.problems());
        return kExitInput;
      }
      for (const auto& l : manifest->languages) {
        if (l.config.empty()) {
          err_ << "error: bundle language " << l.name << " names no tool configuration\n";
          return kExitInput;
        }
        fs::path config = fs::path(l.config).is_absolute() ? fs::path(l.config) : fs::path(path).parent_path() / l.config;
        auto service = open(config.string());
        if (!service) return kExitInput;
        languages.push_back({l.name, l.extensions, service.value()});
      }
    } else {
      auto service = open(path);
      if (!service) return kExitInput;
      const auto& lang = service->language();
      languages.push_back({lang.name, lang.extensions, service.value()});
    }
    std::unique_ptr<std::ofstream> log;
    if (!opts_.logFile.empty()) {
      log = std::make_unique<std::ofstream>(opts_.logFile, std::ios::app);
      if (!*log) {
        err_ << "error: cannot open log file " << opts_.logFile << "\n";
        return kExitInput;
      }
    }
    lsp::Server server(std::move(languages), log.get());
    return server.run(in_, out_);
  }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& i : items) out += (out.empty() ? "" : ", ") + i;
    return out;
  }

  std::vector<fs::path> roots(const std::string& anchor) const {
    std::vector<fs::path> out;
    for (const auto& p : opts_.grammarPath) out.emplace_back(p);
    if (out.empty()) out = grammar_path_from_env();
    fs::path dir = fs::path(anchor).parent_path();
    out.push_back(dir.empty() ? fs::path(".") : dir);
    return out;
  }

  std::optional<LanguageService> open(const std::string& toolPath) {
    auto service = open_tool(toolPath, roots(toolPath), demo::default_registry());
    print_reports(service.problems());
    if (!service) return std::nullopt;
    return service.value();
  }

  std::vector<ProblemReport> check_file(const std::string& file) {
    auto text = read_file(file);
    if (!text) return {make_error("cannot read " + file, file, 1, 1, "cli")};
    auto fragment = parse_grammar(*text, file);
    if (!fragment) return fragment.problems();
    std::vector<ProblemReport> out = fragment.problems();
    GrammarLoader loader(roots(file));
    std::vector<GrammarFragment> supers;
    for (const auto& name : fragment->superGrammars) {
      auto super = loader.load(name);
      if (super) super = resolve_inheritance(super.value(), loader.lookup());
      if (!super) {
        out.insert(out.end(), super.problems().begin(), super.problems().end());
        return out;
      }
      supers.push_back(super.value());
    }
    auto reports = validate_fragment(fragment.value(), supers);
    out.insert(out.end(), reports.begin(), reports.end());
    return out;
  }

  void print_reports(const std::vector<ProblemReport>& reports) {
    if (opts_.json) {
      if (reports.empty()) return;
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      err_ << arr.dump(2) << "\n";
      return;
    }
    for (const auto& r : reports) err_ << format_report(r) << "\n";
  }

  int fail_read(const std::string& path) {
    err_ << "error: cannot read " << path << "\n";
    return kExitInput;
  }

  void write(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
  }

  void emit(const std::string& content) {
    if (opts_.out.empty()) {
      out_ << content;
    } else {
      write(opts_.out, content);
    }
  }

  static bool parse_selection(const std::string& spec, std::string_view text, Span& out) {
    LineIndex lines(text);
    if (spec.empty()) {
      out = {lines.position(0), lines.position(0)};
      return true;
    }
    static const std::regex kPattern(R"((\d+):(\d+)-(\d+):(\d+))");
    std::smatch m;
    if (!std::regex_match(spec, m, kPattern)) return false;
    auto offset = [&](int line, int column) {
      std::size_t pos = 0;
      for (int l = 1; l < line; ++l) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) return text.size();
        pos = nl + 1;
      }
      return std::min(text.size(), pos + static_cast<std::size_t>(std::max(column - 1, 0)));
    };
    out = {lines.position(offset(std::stoi(m[1]), std::stoi(m[2]))),
           lines.position(offset(std::stoi(m[3]), std::stoi(m[4])))};
    return true;
  }

  const Options& opts_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compose grammar fragments into languages and serve their editor features", "fragmentc"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opts;
  app.add_option("--grammar-path", opts.grammarPath, "Grammar root directory (repeatable)");
  app.add_option("--out", opts.out, "Write the primary output to this file");
  app.add_flag("--json", opts.json, "Machine-readable output");
  app.add_option("--log-file", opts.logFile, "Server request log");

  std::vector<std::string> files;
  std::string tool, doc, id, selection;

  auto* check = app.add_subcommand("check", "Parse and validate grammar files");
  check->add_option("files", files, "Grammar files")->required();
  auto* compose = app.add_subcommand("compose", "Compose the language of a tool configuration");
  compose->add_option("tool", tool, "Tool configuration")->required();
  auto* parse = app.add_subcommand("parse", "Dump the syntax tree of a document");
  parse->add_option("tool", tool, "Tool configuration")->required();
  parse->add_option("document", doc, "Document")->required();
  auto* features = app.add_subcommand("features", "Dump the editor features of a document as JSON");
  features->add_option("tool", tool, "Tool configuration")->required();
  features->add_option("document", doc, "Document")->required();
  auto* format = app.add_subcommand("format", "Print a document through the configured pretty printers");
  format->add_option("tool", tool, "Tool configuration")->required();
  format->add_option("document", doc, "Document")->required();
  auto* action = app.add_subcommand("action", "Run an editor or navigator action");
  action->add_option("tool", tool, "Tool configuration")->required();
  action->add_option("action", id, "Action id or menu name")->required();
  action->add_option("files", files, "Documents")->required();
  action->add_option("--selection", selection, "Selection as line:col-line:col");
  auto* bundle = app.add_subcommand("bundle", "Emit the manifest bundling several tools");
  bundle->add_option("tools", files, "Tool configurations")->required();
  auto* serve = app.add_subcommand("serve", "Run the language server on stdio");
  serve->add_option("config", tool, "Tool configuration or bundle manifest (.json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Command cmd(opts, in, out, err);
    if (*check) return cmd.check(files);
    if (*compose) return cmd.compose(tool);
    if (*parse) return cmd.parse(tool, doc);
    if (*features) return cmd.features(tool, doc);
    if (*format) return cmd.format(tool, doc);
    if (*action) return cmd.action(tool, id, files, selection);
    if (*bundle) return cmd.bundle(files);
    if (*serve) return cmd.serve(tool);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace fragmentc::cli
