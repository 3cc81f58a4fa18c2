#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/composer.hpp"
#include "fragmentc/diagnostics.hpp"
#include "fragmentc/lexer.hpp"
#include "fragmentc/syntax_tree.hpp"

namespace fragmentc {

struct ParseOutcome {
  std::optional<SyntaxNode> root;
  std::vector<Token> tokens;
  std::vector<ProblemReport> problems;
};

namespace detail {
struct CompiledGrammar;
}

/// Executable recognizer for one composed language: memoized recursive
/// descent with ordered choice over the token stream. Immutable once built;
/// `parse` may run concurrently on different documents.
///
/// Keywords are scoped per fragment: inside a production of fragment F only
/// F's keywords are reserved, so an embedded fragment never reserves the
/// host's keywords and vice versa.
class ParserEngine {
 public:
  /// Rejects left-recursive grammars; unreachable productions only warn.
  static Result<ParserEngine> build(const ComposedLanguage& language);

  ParseOutcome parse(std::string_view text, std::string_view file) const;
  /// Parses `text` as an instance of `production` (qualified or local name).
  ParseOutcome parse(std::string_view text, std::string_view file,
                     std::string_view production) const;

  const ComposedLanguage& language() const;
  const Lexer& lexer() const;

 private:
  explicit ParserEngine(std::shared_ptr<const detail::CompiledGrammar> grammar)
      : grammar_(std::move(grammar)) {}

  std::shared_ptr<const detail::CompiledGrammar> grammar_;
};

inline Result<ParserEngine> build_engine(const ComposedLanguage& language) {
  return ParserEngine::build(language);
}

}  // namespace fragmentc
