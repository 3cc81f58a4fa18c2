#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fragmentc/language_service.hpp"

namespace fragmentc::testing {

std::filesystem::path corpus_dir();
std::filesystem::path corpus_path(std::string_view relative);
std::string read_corpus(std::string_view relative);

/// The mail chart used throughout the examples (19 lines).
std::string mail_chart();

/// MSC with embedded Java, composed from corpus/msc.mctool.
const LanguageService& msc_service();
/// The VipMSC subgrammar composition from corpus/vipmsc.mctool.
const LanguageService& vip_service();

/// `text` with 1-based line `line` replaced by `replacement`.
std::string replace_line(std::string_view text, int line, std::string_view replacement);
std::string line_of(std::string_view text, int line);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path write(std::string_view name, std::string_view content) const;

 private:
  std::filesystem::path path_;
};

}  // namespace fragmentc::testing
