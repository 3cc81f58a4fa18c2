#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fragmentc/source.hpp"

namespace fragmentc::detail {

/// Raised at the first lexical or syntax error in a meta-level file.
struct MetaError : std::runtime_error {
  MetaError(std::string message, Position at)
      : std::runtime_error(std::move(message)), position(at) {}
  Position position;
};

enum class MetaTokenKind { Ident, String, Regex, Symbol, End };

struct MetaToken {
  MetaTokenKind kind = MetaTokenKind::End;
  std::string text;  // unescaped for strings and regexes
  Position position;
  std::size_t endOffset = 0;

  bool is_symbol(char c) const {
    return kind == MetaTokenKind::Symbol && text.size() == 1 && text[0] == c;
  }
  bool is_ident(std::string_view word) const {
    return kind == MetaTokenKind::Ident && text == word;
  }
};

std::string describe(const MetaToken& token);

/// Lazy lexer for `.mc` and `.mctool` files. `//` and `/* */` comments and
/// whitespace are skipped. Regex literals are only recognized on request,
/// because `/` is otherwise meaningless at the meta level.
class MetaLexer {
 public:
  explicit MetaLexer(std::string_view text);

  const MetaToken& peek();
  const MetaToken& peek_second();
  MetaToken next();
  /// Reads a `/.../` literal at the current position.
  MetaToken next_regex();

  std::string_view text() const { return text_; }
  const LineIndex& lines() const { return lines_; }
  /// Position just past the last consumed token.
  Position last_end() const { return lines_.position(last_end_); }

 private:
  void skip_trivia();
  MetaToken scan();

  std::string_view text_;
  LineIndex lines_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
  MetaToken buffered_[2];
  int buffered_count_ = 0;
};

}  // namespace fragmentc::detail
