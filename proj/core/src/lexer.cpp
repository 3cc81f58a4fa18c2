#include "fragmentc/lexer.hpp"

#include <algorithm>
#include <cctype>

#include "body_analysis.hpp"
#include "fragmentc/composer.hpp"

namespace fragmentc {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword:
      return "keyword";
    case TokenKind::Ident:
      return "ident";
    case TokenKind::Symbol:
      return "symbol";
    case TokenKind::CommentLine:
      return "comment-line";
    case TokenKind::CommentBlock:
      return "comment-block";
    case TokenKind::Whitespace:
      return "whitespace";
    case TokenKind::ErrorChar:
      return "error-char";
  }
  return "error-char";
}

bool is_identifier_text(std::string_view text) { return detail::is_identifier(text); }

Lexer::Lexer(const ComposedLanguage& language) {
  std::set<std::string> symbols;
  for (const auto& [_, p] : language.productions) {
    detail::for_each_terminal(p.body, [&](const std::string& t) {
      if (!detail::is_identifier(t)) symbols.insert(t);
    });
  }
  symbols_.assign(symbols.begin(), symbols.end());
  std::stable_sort(symbols_.begin(), symbols_.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  for (const auto& [name, def] : language.tokens) {
    patterns_.push_back({name, std::regex(def.pattern, std::regex::ECMAScript)});
  }
}

std::size_t Lexer::match_symbol(std::string_view rest) const {
  for (const auto& s : symbols_) {
    if (rest.substr(0, s.size()) == s) return s.size();
  }
  return 0;
}

std::size_t Lexer::match_pattern_prefix(std::string_view rest) const {
  std::size_t best = 0;
  for (const auto& p : patterns_) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(rest.begin(), rest.end(), m, p.regex, std::regex_constants::match_continuous)) {
      best = std::max(best, static_cast<std::size_t>(m.length(0)));
    }
  }
  return best;
}

bool Lexer::matches_pattern(std::string_view tokenName, std::string_view text) const {
  for (const auto& p : patterns_) {
    if (p.name == tokenName) return std::regex_match(text.begin(), text.end(), p.regex);
  }
  return false;
}

std::vector<Token> Lexer::tokenize(std::string_view text, std::string_view file,
                                   std::vector<ProblemReport>* problems) const {
  std::vector<Token> tokens;
  LineIndex lines(text);
  std::size_t pos = 0;
  auto emit = [&](TokenKind kind, std::size_t length) {
    Token t;
    t.kind = kind;
    t.text = std::string(text.substr(pos, length));
    t.span = {lines.position(pos), lines.position(pos + length)};
    tokens.push_back(std::move(t));
    pos += length;
  };
  while (pos < text.size()) {
    std::string_view rest = text.substr(pos);
    char c = rest[0];
    if (space(c)) {
      std::size_t n = 1;
      while (n < rest.size() && space(rest[n])) ++n;
      emit(TokenKind::Whitespace, n);
      continue;
    }
    if (rest.substr(0, 2) == "//") {
      std::size_t n = rest.find('\n');
      if (n == std::string_view::npos) n = rest.size();
      if (n > 0 && rest[n - 1] == '\r') --n;
      emit(TokenKind::CommentLine, n);
      continue;
    }
    if (rest.substr(0, 2) == "/*") {
      std::size_t close = rest.find("*/", 2);
      if (close == std::string_view::npos) {
        if (problems) {
          auto at = lines.position(pos);
          problems->push_back(make_error("unterminated block comment", std::string(file), at.line,
                                         at.column, "lexer"));
        }
        emit(TokenKind::CommentBlock, rest.size());
      } else {
        emit(TokenKind::CommentBlock, close + 2);
      }
      continue;
    }
    std::size_t ident = 0;
    if (ident_start(c)) {
      ident = 1;
      while (ident < rest.size() && ident_char(rest[ident])) ++ident;
    }
    std::size_t symbol = match_symbol(rest);
    std::size_t pattern = match_pattern_prefix(rest);
    std::size_t best = std::max({ident, symbol, pattern});
    if (best == 0) {
      std::size_t n = std::min(utf8_length(static_cast<unsigned char>(c)), rest.size());
      if (problems) {
        auto at = lines.position(pos);
        problems->push_back(make_error("unexpected character '" + std::string(rest.substr(0, n)) + "'",
                                       std::string(file), at.line, at.column, "lexer"));
      }
      emit(TokenKind::ErrorChar, n);
    } else if (best == ident) {
      emit(TokenKind::Ident, ident);
    } else if (best == symbol) {
      emit(TokenKind::Symbol, symbol);
    } else {
      emit(TokenKind::Ident, pattern);
    }
  }
  return tokens;
}

bool Lexer::separable(std::string_view a, std::string_view b) const {
  std::string joined = std::string(a) + std::string(b);
  std::vector<ProblemReport> problems;
  auto tokens = tokenize(joined, {}, &problems);
  if (!problems.empty() || tokens.size() != 2) return false;
  return tokens[0].text == a && tokens[1].text == b;
}

void classify(Token& token, const std::set<std::string>& keywords) {
  if (token.kind != TokenKind::Ident && token.kind != TokenKind::Keyword) return;
  if (!is_identifier_text(token.text)) return;
  token.kind = keywords.count(token.text) ? TokenKind::Keyword : TokenKind::Ident;
}

std::vector<Token> lex(std::string_view text, const ComposedLanguage& language,
                       std::string_view activeFragment) {
  Lexer lexer(language);
  auto tokens = lexer.tokenize(text);
  const FragmentInfo* mode = language.find_fragment(activeFragment);
  static const std::set<std::string> kNone;
  for (auto& t : tokens) classify(t, mode ? mode->keywords : kNone);
  return tokens;
}

}  // namespace fragmentc
