#include "fragmentc/lsp/server.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>

#include "fragmentc/grammar_loader.hpp"
#include "fragmentc/lsp/transport.hpp"

namespace fragmentc::lsp {

using nlohmann::json;

namespace {

constexpr int kParseError = -32700;
constexpr int kInvalidRequest = -32600;
constexpr int kMethodNotFound = -32601;
constexpr int kInvalidParams = -32602;
constexpr int kServerNotInitialized = -32002;

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view line_of(std::string_view text, int line) {
  std::size_t start = 0;
  for (int l = 1; l < line; ++l) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) return {};
    start = nl + 1;
  }
  std::string_view rest = text.substr(start);
  std::string_view out = rest.substr(0, rest.find('\n'));
  if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
  return out;
}

/// Byte offset of a 0-based line and UTF-16 character.
Position position_from_lsp(std::string_view text, int line, int character) {
  std::size_t start = 0;
  for (int l = 0; l < line; ++l) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      start = text.size();
      break;
    }
    start = nl + 1;
  }
  std::size_t pos = start;
  int units = 0;
  while (pos < text.size() && text[pos] != '\n' && units < character) {
    auto lead = static_cast<unsigned char>(text[pos]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : 4;
    units += len == 4 ? 2 : 1;
    pos += len;
  }
  pos = std::min(pos, text.size());
  return LineIndex(text).position(pos);
}

json lsp_position(std::string_view text, const Position& p) {
  return {{"line", p.line - 1}, {"character", utf16_column(line_of(text, p.line), p.column)}};
}

json lsp_range(std::string_view text, const Span& s) {
  return {{"start", lsp_position(text, s.start)}, {"end", lsp_position(text, s.end)}};
}

json full_range(std::string_view text) {
  return {{"start", {{"line", 0}, {"character", 0}}},
          {"end", lsp_position(text, LineIndex(text).position(text.size()))}};
}

int severity_code(Severity s) {
  switch (s) {
    case Severity::Error:
      return 1;
    case Severity::Warning:
      return 2;
    case Severity::Info:
      return 3;
  }
  return 1;
}

json response(const json& id, json result) { return {{"jsonrpc", "2.0"}, {"id", id}, {"result", std::move(result)}}; }

json error_response(const json& id, int code, std::string message) {
  return {{"jsonrpc", "2.0"}, {"id", id}, {"error", {{"code", code}, {"message", std::move(message)}}}};
}

json notification(std::string method, json params) {
  return {{"jsonrpc", "2.0"}, {"method", std::move(method)}, {"params", std::move(params)}};
}

json symbol_json(std::string_view text, const OutlineSymbol& s) {
  json children = json::array();
  for (const auto& c : s.children) children.push_back(symbol_json(text, c));
  json range = lsp_range(text, s.span);
  return {{"name", s.label.empty() ? std::string("(unnamed)") : s.label},
          {"detail", s.iconPath},
          {"kind", 5},
          {"range", range},
          {"selectionRange", range},
          {"children", std::move(children)}};
}

}  // namespace

std::string uri_to_path(std::string_view uri) {
  constexpr std::string_view kScheme = "file://";
  if (uri.substr(0, kScheme.size()) == kScheme) uri.remove_prefix(kScheme.size());
  std::string out;
  for (std::size_t i = 0; i < uri.size(); ++i) {
    if (uri[i] == '%' && i + 2 < uri.size() && hex_value(uri[i + 1]) >= 0 && hex_value(uri[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(uri[i + 1]) * 16 + hex_value(uri[i + 2]));
      i += 2;
    } else {
      out += uri[i];
    }
  }
  return out;
}

std::string path_to_uri(std::string_view path) {
  static const char* kHex = "0123456789ABCDEF";
  std::string out = "file://";
  for (char c : path) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || std::string_view("/-_.~").find(c) != std::string_view::npos) {
      out += c;
    } else {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    }
  }
  return out;
}

int utf16_column(std::string_view line, int byteColumn) {
  std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(std::max(byteColumn - 1, 0)), line.size());
  int units = 0;
  for (std::size_t i = 0; i < limit;) {
    auto lead = static_cast<unsigned char>(line[i]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : 4;
    units += len == 4 ? 2 : 1;
    i += len;
  }
  return units;
}

Server::Server(std::vector<ServedLanguage> languages, std::ostream* log)
    : languages_(std::move(languages)), log_(log) {}

void Server::log(std::string_view line) const {
  if (log_) {
    *log_ << line << '\n';
    log_->flush();
  }
}

std::optional<std::size_t> Server::language_for(std::string_view uri) const {
  std::string ext = std::filesystem::path(uri_to_path(uri)).extension().string();
  for (std::size_t i = 0; i < languages_.size(); ++i) {
    for (const auto& e : languages_[i].extensions) {
      if (e == ext) return i;
    }
  }
  return std::nullopt;
}

const Server::Document* Server::document(std::string_view uri) {
  auto it = documents_.find(uri);
  if (it == documents_.end()) {
    log("no open document with a bundled language for " + std::string(uri));
    return nullptr;
  }
  Document& doc = it->second;
  if (doc.analyzedVersion != doc.version) {
    doc.analysis = languages_[doc.language].service.analyze(doc.text, uri_to_path(uri), workspace());
    doc.analyzedVersion = doc.version;
  }
  return &doc;
}

DocumentLookup Server::workspace() const {
  return [this](std::string_view path) -> std::optional<std::string> {
    for (const auto& [uri, doc] : documents_) {
      if (uri_to_path(uri) == path) return doc.text;
    }
    return read_file(std::string(path));
  };
}

json Server::publish(std::string_view uri, const Document& doc) const {
  json diags = json::array();
  for (const auto& r : doc.analysis.features.diagnostics) {
    Position start{std::max(r.line, 1), std::max(r.column, 1), 0};
    Position end = start;
    for (const auto& t : doc.analysis.outcome.tokens) {
      if (t.span.start.line == start.line && t.span.start.column == start.column &&
          t.span.end.line == start.line) {
        end = t.span.end;
        break;
      }
    }
    diags.push_back({{"range", {{"start", lsp_position(doc.text, start)}, {"end", lsp_position(doc.text, end)}}},
                     {"severity", severity_code(r.severity)},
                     {"source", r.source},
                     {"message", r.message}});
  }
  return notification("textDocument/publishDiagnostics",
                      {{"uri", std::string(uri)}, {"version", doc.version}, {"diagnostics", std::move(diags)}});
}

json Server::capabilities() const {
  bool format = false;
  json commands = json::array();
  for (const auto& l : languages_) {
    const auto& cfg = l.service.language().effectiveEditor;
    format = format || cfg.formatAvailable;
    for (const auto& a : cfg.menuItems) commands.push_back(a.actionId);
    for (const auto& a : cfg.navigatorItems) commands.push_back(a.actionId);
  }
  return {{"textDocumentSync", {{"openClose", true}, {"change", 1}}},
          {"foldingRangeProvider", true},
          {"documentSymbolProvider", true},
          {"semanticTokensProvider",
           {{"legend", {{"tokenTypes", {"keyword", "comment"}}, {"tokenModifiers", json::array()}}},
            {"full", true}}},
          {"documentFormattingProvider", format},
          {"executeCommandProvider", {{"commands", std::move(commands)}}}};
}

json Server::folding(const Document& doc) const {
  json out = json::array();
  for (const auto& f : doc.analysis.features.folds) {
    json start = lsp_position(doc.text, f.span.start);
    json end = lsp_position(doc.text, f.span.end);
    out.push_back({{"startLine", start["line"]},
                   {"startCharacter", start["character"]},
                   {"endLine", end["line"]},
                   {"endCharacter", end["character"]},
                   {"kind", "region"},
                   {"collapsedText", f.placeholder}});
  }
  return out;
}

json Server::symbols(const Document& doc) const {
  json out = json::array();
  for (const auto& s : doc.analysis.features.outline) out.push_back(symbol_json(doc.text, s));
  return out;
}

json Server::semantic_tokens(const Document& doc) const {
  json data = json::array();
  int prevLine = 0;
  int prevChar = 0;
  for (const auto& h : doc.analysis.features.highlights) {
    int type = h.category == HighlightCategory::Keyword ? 0 : 1;
    for (int line = h.span.start.line; line <= h.span.end.line; ++line) {
      std::string_view text = line_of(doc.text, line);
      int from = line == h.span.start.line ? h.span.start.column : 1;
      int to = line == h.span.end.line ? h.span.end.column : static_cast<int>(text.size()) + 1;
      int start = utf16_column(text, from);
      int length = utf16_column(text, to) - start;
      if (length <= 0) continue;
      int l = line - 1;
      data.push_back(l - prevLine);
      data.push_back(l == prevLine ? start - prevChar : start);
      data.push_back(length);
      data.push_back(type);
      data.push_back(0);
      prevLine = l;
      prevChar = start;
    }
  }
  return {{"data", std::move(data)}};
}

std::optional<json> Server::formatting(const Document& doc, std::string_view uri) const {
  const auto& service = languages_[doc.language].service;
  if (!service.language().effectiveEditor.formatAvailable || !doc.analysis.outcome.root) return std::nullopt;
  auto text = service.format(doc.text, uri_to_path(uri));
  if (!text) return std::nullopt;
  return json::array({{{"range", full_range(doc.text)}, {"newText", text.value()}}});
}

json Server::apply_edit(const ActionResult& result, std::string_view uri) {
  json edit;
  if (const auto* e = std::get_if<DocumentEdits>(&result.value)) {
    std::string target = e->path.empty() ? std::string(uri) : path_to_uri(e->path);
    std::string text;
    if (auto it = documents_.find(target); it != documents_.end()) text = it->second.text;
    json edits = json::array();
    for (const auto& t : e->edits) edits.push_back({{"range", lsp_range(text, t.range)}, {"newText", t.newText}});
    edit = {{"changes", {{target, std::move(edits)}}}};
  } else if (const auto* f = std::get_if<NewFiles>(&result.value)) {
    json changes = json::array();
    for (const auto& [path, content] : f->files) {
      std::string target = path_to_uri(path);
      changes.push_back({{"kind", "create"}, {"uri", target}, {"options", {{"overwrite", true}}}});
      changes.push_back({{"textDocument", {{"uri", target}, {"version", nullptr}}},
                         {"edits", json::array({{{"range", {{"start", {{"line", 0}, {"character", 0}}},
                                                            {"end", {{"line", 0}, {"character", 0}}}}},
                                                 {"newText", content}}})}});
    }
    edit = {{"documentChanges", std::move(changes)}};
  }
  return {{"jsonrpc", "2.0"},
          {"id", nextRequestId_++},
          {"method", "workspace/applyEdit"},
          {"params", {{"label", "fragmentc action"}, {"edit", std::move(edit)}}}};
}

void Server::execute(const json& params, json& result, std::vector<json>& out) {
  std::string command = params.value("command", "");
  json args = params.value("arguments", json::array());

  for (const auto& lang : languages_) {
    const auto& cfg = lang.service.language().effectiveEditor;
    bool editor = std::any_of(cfg.menuItems.begin(), cfg.menuItems.end(),
                              [&](const NamedAction& a) { return a.actionId == command; });
    bool navigator = std::any_of(cfg.navigatorItems.begin(), cfg.navigatorItems.end(),
                                 [&](const NamedAction& a) { return a.actionId == command; });
    if (!editor && !navigator) continue;

    ActionResult action;
    std::string uri;
    if (editor) {
      if (args.empty() || !args[0].is_string()) {
        action = ActionResult::error("command " + command + " expects a document uri");
      } else {
        uri = args[0].get<std::string>();
        EditorActionRequest request;
        request.path = uri_to_path(uri);
        if (auto it = documents_.find(uri); it != documents_.end()) {
          request.text = it->second.text;
        } else if (auto text = read_file(request.path)) {
          request.text = *text;
        }
        Position zero = LineIndex(request.text).position(0);
        request.selection = {zero, zero};
        if (args.size() > 1 && args[1].is_object()) {
          const auto& r = args[1];
          request.selection = {
              position_from_lsp(request.text, r["start"].value("line", 0), r["start"].value("character", 0)),
              position_from_lsp(request.text, r["end"].value("line", 0), r["end"].value("character", 0))};
        }
        action = lang.service.editor_action(command, request, workspace());
      }
    } else {
      json uris = (!args.empty() && args[0].is_array()) ? args[0] : args;
      std::map<std::string, std::string> files;
      for (const auto& u : uris) {
        if (!u.is_string()) continue;
        std::string path = uri_to_path(u.get<std::string>());
        files[path] = std::filesystem::path(path).parent_path().string();
      }
      action = lang.service.navigator_action(command, files, workspace());
    }

    if (const auto* r = std::get_if<Reports>(&action.value)) {
      json reports = json::array();
      for (const auto& p : r->reports) reports.push_back(format_report(p));
      result = {{"reports", reports}};
      if (action.failed()) {
        out.push_back(notification("window/showMessage",
                                   {{"type", 1}, {"message", r->reports.front().message}}));
      }
    } else if (const auto* f = std::get_if<NewFiles>(&action.value)) {
      json files = json::array();
      for (const auto& [path, content] : f->files) files.push_back(path_to_uri(path));
      result = {{"files", files}};
      out.push_back(apply_edit(action, uri));
    } else {
      result = {{"edited", uri}};
      out.push_back(apply_edit(action, uri));
    }
    return;
  }
  throw std::invalid_argument("unknown command " + command);
}

std::vector<json> Server::handle(const json& message) {
  std::vector<json> out;
  if (!message.is_object()) {
    out.push_back(error_response(nullptr, kInvalidRequest, "message is not an object"));
    return out;
  }
  const bool isRequest = message.contains("id") && message.contains("method");
  if (!message.contains("method")) return out;  // a response to one of our requests
  const std::string method = message["method"].is_string() ? message["method"].get<std::string>() : "";
  const json id = message.value("id", json());
  const json params = message.value("params", json::object());
  log("<- " + method);

  if (method == "exit") {
    exited_ = true;
    return out;
  }
  if (!initialized_ && method != "initialize") {
    if (isRequest) out.push_back(error_response(id, kServerNotInitialized, "server not initialized"));
    return out;
  }

  try {
    if (method == "initialize") {
      initialized_ = true;
      out.push_back(response(id, {{"capabilities", capabilities()},
                                  {"serverInfo", {{"name", "fragmentc"}, {"version", "0.1.0"}}}}));
    } else if (method == "initialized") {
    } else if (method == "shutdown") {
      shutdown_ = true;
      out.push_back(response(id, nullptr));
    } else if (method == "textDocument/didOpen") {
      const auto& td = params.at("textDocument");
      std::string uri = td.at("uri");
      auto lang = language_for(uri);
      if (!lang) {
        log("no bundled language for " + uri);
        return out;
      }
      Document doc;
      doc.text = td.at("text").get<std::string>();
      doc.version = td.value("version", 0L);
      doc.language = *lang;
      documents_[uri] = std::move(doc);
      out.push_back(publish(uri, *document(uri)));
    } else if (method == "textDocument/didChange") {
      std::string uri = params.at("textDocument").at("uri");
      auto it = documents_.find(uri);
      if (it == documents_.end()) {
        log("change for unknown document " + uri);
        return out;
      }
      const auto& changes = params.at("contentChanges");
      if (!changes.empty()) it->second.text = changes.back().at("text").get<std::string>();
      it->second.version = params.at("textDocument").value("version", it->second.version + 1);
      out.push_back(publish(uri, *document(uri)));
    } else if (method == "textDocument/didClose") {
      std::string uri = params.at("textDocument").at("uri");
      if (documents_.erase(uri)) {
        out.push_back(notification("textDocument/publishDiagnostics",
                                   {{"uri", uri}, {"diagnostics", json::array()}}));
      }
    } else if (method == "textDocument/foldingRange") {
      const Document* doc = document(params.at("textDocument").at("uri").get<std::string>());
      out.push_back(response(id, doc ? folding(*doc) : json::array()));
    } else if (method == "textDocument/documentSymbol") {
      const Document* doc = document(params.at("textDocument").at("uri").get<std::string>());
      out.push_back(response(id, doc ? symbols(*doc) : json::array()));
    } else if (method == "textDocument/semanticTokens/full") {
      const Document* doc = document(params.at("textDocument").at("uri").get<std::string>());
      out.push_back(response(id, doc ? semantic_tokens(*doc) : json{{"data", json::array()}}));
    } else if (method == "textDocument/formatting") {
      std::string uri = params.at("textDocument").at("uri");
      const Document* doc = document(uri);
      std::optional<json> edits = doc ? formatting(*doc, uri) : std::nullopt;
      out.push_back(response(id, edits ? *edits : json::array()));
    } else if (method == "workspace/executeCommand") {
      json result;
      std::vector<json> extra;
      execute(params, result, extra);
      out.push_back(response(id, result));
      out.insert(out.end(), extra.begin(), extra.end());
    } else if (isRequest) {
      out.push_back(error_response(id, kMethodNotFound, "method not found: " + method));
    }
  } catch (const std::invalid_argument& e) {
    if (isRequest) out.push_back(error_response(id, kInvalidParams, e.what()));
  } catch (const json::exception& e) {
    if (isRequest) out.push_back(error_response(id, kInvalidParams, e.what()));
  }
  return out;
}

int Server::run(std::istream& in, std::ostream& out) {
  while (!exited_) {
    auto body = read_message(in);
    if (!body) break;
    json message = json::parse(*body, nullptr, false);
    if (message.is_discarded()) {
      write_message(out, error_response(nullptr, kParseError, "invalid JSON"));
      continue;
    }
    for (const auto& reply : handle(message)) write_message(out, reply);
  }
  return shutdown_ ? 0 : 1;
}

}  // namespace fragmentc::lsp
