#include "meta_lexer.hpp"

#include <cctype>

namespace fragmentc::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::string_view kSymbols = "{}()[];:=|?*+,<>.";

}  // namespace

std::string describe(const MetaToken& token) {
  switch (token.kind) {
    case MetaTokenKind::End:
      return "end of input";
    case MetaTokenKind::String:
      return "string \"" + token.text + "\"";
    case MetaTokenKind::Regex:
      return "regex /" + token.text + "/";
    default:
      return "'" + token.text + "'";
  }
}

MetaLexer::MetaLexer(std::string_view text) : text_(text), lines_(text) {}

void MetaLexer::skip_trivia() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos_;
    } else if (text_.substr(pos_, 2) == "//") {
      while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    } else if (text_.substr(pos_, 2) == "/*") {
      auto close = text_.find("*/", pos_ + 2);
      if (close == std::string_view::npos) {
        throw MetaError("unterminated block comment", lines_.position(pos_));
      }
      pos_ = close + 2;
    } else {
      break;
    }
  }
}

MetaToken MetaLexer::scan() {
  skip_trivia();
  MetaToken tok;
  tok.position = lines_.position(pos_);
  if (pos_ >= text_.size()) {
    tok.kind = MetaTokenKind::End;
    tok.endOffset = pos_;
    return tok;
  }
  char c = text_[pos_];
  if (ident_start(c)) {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    tok.kind = MetaTokenKind::Ident;
    tok.text = std::string(text_.substr(begin, pos_ - begin));
  } else if (c == '"') {
    tok.kind = MetaTokenKind::String;
    ++pos_;
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw MetaError("unterminated string literal", tok.position);
      }
      char s = text_[pos_++];
      if (s == '"') break;
      if (s == '\\') {
        if (pos_ >= text_.size()) throw MetaError("unterminated string literal", tok.position);
        char e = text_[pos_++];
        if (e != '"' && e != '\\') {
          throw MetaError(std::string("invalid escape sequence \\") + e, lines_.position(pos_ - 2));
        }
        tok.text += e;
      } else {
        tok.text += s;
      }
    }
  } else if (kSymbols.find(c) != std::string_view::npos) {
    tok.kind = MetaTokenKind::Symbol;
    tok.text = std::string(1, c);
    ++pos_;
  } else {
    throw MetaError(std::string("unexpected character '") + c + "'", tok.position);
  }
  tok.endOffset = pos_;
  return tok;
}

const MetaToken& MetaLexer::peek() {
  if (buffered_count_ == 0) {
    buffered_[0] = scan();
    buffered_count_ = 1;
  }
  return buffered_[0];
}

const MetaToken& MetaLexer::peek_second() {
  peek();
  if (buffered_count_ == 1) {
    buffered_[1] = scan();
    buffered_count_ = 2;
  }
  return buffered_[1];
}

MetaToken MetaLexer::next() {
  peek();
  MetaToken tok = std::move(buffered_[0]);
  if (buffered_count_ == 2) buffered_[0] = std::move(buffered_[1]);
  --buffered_count_;
  last_end_ = tok.endOffset;
  return tok;
}

MetaToken MetaLexer::next_regex() {
  if (buffered_count_ > 0) {
    // Rewind: a buffered token starting with '/' cannot exist, so the
    // buffered token began where the regex begins.
    pos_ = buffered_[0].position.offset;
    buffered_count_ = 0;
  }
  skip_trivia();
  MetaToken tok;
  tok.position = lines_.position(pos_);
  if (pos_ >= text_.size() || text_[pos_] != '/') {
    throw MetaError("expected regex literal /.../", tok.position);
  }
  ++pos_;
  tok.kind = MetaTokenKind::Regex;
  for (;;) {
    if (pos_ >= text_.size() || text_[pos_] == '\n') {
      throw MetaError("unterminated regex literal", tok.position);
    }
    char s = text_[pos_++];
    if (s == '/') break;
    if (s == '\\' && pos_ < text_.size() && text_[pos_] == '/') {
      tok.text += '/';
      ++pos_;
    } else {
      tok.text += s;
    }
  }
  if (tok.text.empty()) throw MetaError("empty regex literal", tok.position);
  tok.endOffset = pos_;
  last_end_ = pos_;
  return tok;
}

}  // namespace fragmentc::detail
