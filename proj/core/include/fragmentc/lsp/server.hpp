#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fragmentc/language_service.hpp"

namespace fragmentc::lsp {

struct ServedLanguage {
  std::string name;
  /// With leading dot, e.g. ".msc".
  std::vector<std::string> extensions;
  LanguageService service;
};

std::string uri_to_path(std::string_view uri);
std::string path_to_uri(std::string_view path);

/// UTF-16 code units in the first `byteColumn - 1` bytes of `line`.
int utf16_column(std::string_view line, int byteColumn);

/// Language server for every language of one bundle. Documents are synced
/// in full; every change reparses and republishes diagnostics.
class Server {
 public:
  explicit Server(std::vector<ServedLanguage> languages, std::ostream* log = nullptr);

  /// Handles one incoming message and returns the outgoing messages
  /// (response and notifications/requests) in send order.
  std::vector<nlohmann::json> handle(const nlohmann::json& message);

  /// Serves framed messages until `exit`; returns the process exit code.
  int run(std::istream& in, std::ostream& out);

  bool exited() const { return exited_; }
  std::size_t open_documents() const { return documents_.size(); }

 private:
  struct Document {
    std::string text;
    long version = 0;
    std::size_t language = 0;
    LanguageService::Analysis analysis;
    long analyzedVersion = -1;
  };

  using json = nlohmann::json;

  void log(std::string_view line) const;
  std::optional<std::size_t> language_for(std::string_view uri) const;
  const Document* document(std::string_view uri);
  json publish(std::string_view uri, const Document& doc) const;
  DocumentLookup workspace() const;

  json capabilities() const;
  json folding(const Document& doc) const;
  json symbols(const Document& doc) const;
  json semantic_tokens(const Document& doc) const;
  std::optional<json> formatting(const Document& doc, std::string_view uri) const;
  void execute(const json& params, json& result, std::vector<json>& out);
  json apply_edit(const ActionResult& result, std::string_view uri);

  std::vector<ServedLanguage> languages_;
  std::map<std::string, Document, std::less<>> documents_;
  std::ostream* log_;
  bool initialized_ = false;
  bool shutdown_ = false;
  bool exited_ = false;
  long nextRequestId_ = 1;
};

}  // namespace fragmentc::lsp
