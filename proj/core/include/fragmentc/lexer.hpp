#pragma once

#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/diagnostics.hpp"
#include "fragmentc/source.hpp"

namespace fragmentc {

struct ComposedLanguage;

enum class TokenKind { Keyword, Ident, Symbol, CommentLine, CommentBlock, Whitespace, ErrorChar };

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::ErrorChar;
  std::string text;
  Span span;

  bool is_trivia() const {
    return kind == TokenKind::Whitespace || kind == TokenKind::CommentLine ||
           kind == TokenKind::CommentBlock;
  }
  bool is_comment() const {
    return kind == TokenKind::CommentLine || kind == TokenKind::CommentBlock;
  }
};

/// Splits documents of one composed language into tokens. Splitting does not
/// depend on the active fragment; keyword classification does (see
/// `classify`). At each position the longest of identifier, grammar symbol
/// and declared token pattern wins; ties prefer identifier, then symbol.
class Lexer {
 public:
  explicit Lexer(const ComposedLanguage& language);

  /// Tokens cover `text` exactly. Identifier-shaped and pattern tokens come
  /// out as Ident, grammar symbols as Symbol.
  std::vector<Token> tokenize(std::string_view text, std::string_view file = {},
                              std::vector<ProblemReport>* problems = nullptr) const;

  /// True iff `text` is fully matched by the named token pattern.
  bool matches_pattern(std::string_view tokenName, std::string_view text) const;

  /// True iff `a` immediately followed by `b` still lexes as the two tokens.
  bool separable(std::string_view a, std::string_view b) const;

 private:
  struct Pattern {
    std::string name;
    std::regex regex;
  };

  std::size_t match_symbol(std::string_view rest) const;
  std::size_t match_pattern_prefix(std::string_view rest) const;

  std::vector<std::string> symbols_;  // longest first
  std::vector<Pattern> patterns_;
};

/// Convenience: tokenizes and classifies identifier tokens against the
/// keywords of `activeFragment`.
std::vector<Token> lex(std::string_view text, const ComposedLanguage& language,
                       std::string_view activeFragment);

/// Turns Ident tokens whose text is in `keywords` into Keyword tokens (and
/// Keyword tokens not in it back into Ident).
void classify(Token& token, const std::set<std::string>& keywords);

bool is_identifier_text(std::string_view text);

}  // namespace fragmentc
