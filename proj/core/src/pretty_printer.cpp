#include "fragmentc/pretty_printer.hpp"

#include "fragmentc/composer.hpp"

namespace fragmentc {

PrintContext::PrintContext(const Lexer& lexer, const std::vector<Token>& tokens)
    : lexer_(lexer), tokens_(tokens) {}

void PrintContext::emit(std::string_view text, bool spaced) {
  if (lineStart_) {
    out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
  } else if (spaced || !lexer_.separable(last_, text)) {
    out_ += ' ';
  }
  out_ += text;
  last_ = std::string(text);
  lineStart_ = false;
  glue_ = false;
}

void PrintContext::word(std::string_view text) { emit(text, !glue_); }

void PrintContext::attach(std::string_view text) { emit(text, false); }

void PrintContext::newline() {
  if (lineStart_) return;
  out_ += '\n';
  lineStart_ = true;
  glue_ = false;
}

void PrintContext::comments_before(std::size_t index) {
  for (; nextToken_ < index && nextToken_ < tokens_.size(); ++nextToken_) {
    const Token& t = tokens_[nextToken_];
    if (!t.is_comment()) continue;
    emit(t.text, true);
    if (t.kind == TokenKind::CommentLine) newline();
  }
  if (nextToken_ <= index) nextToken_ = index + 1;
}

std::string PrintContext::finish() {
  comments_before(tokens_.size());
  newline();
  return std::move(out_);
}

void BlockPrinter::print(const SyntaxNode& node, PrintContext& ctx, const PrinterChain& chain) const {
  for (const auto& item : node.layout) {
    if (const auto* leaf = std::get_if<Leaf>(&item)) {
      ctx.comments_before(leaf->token);
      token(leaf->text, ctx);
    } else if (const auto* c = node.child(std::get<ChildRef>(item))) {
      chain.print(*c, ctx);
    }
  }
}

void BlockPrinter::token(std::string_view text, PrintContext& ctx) const {
  if (text == "{") {
    ctx.word(text);
    ctx.indent();
    ctx.newline();
  } else if (text == "}") {
    ctx.dedent();
    ctx.newline();
    ctx.word(text);
    ctx.newline();
  } else if (text == ";") {
    ctx.attach(text);
    ctx.newline();
  } else if (text == ",") {
    ctx.attach(text);
  } else {
    ctx.word(text);
  }
}

void CStylePrinter::token(std::string_view text, PrintContext& ctx) const {
  if (text == "(" || text == ".") {
    ctx.attach(text);
    ctx.glue_next();
  } else if (text == ")") {
    ctx.attach(text);
  } else {
    BlockPrinter::token(text, ctx);
  }
}

PrinterChain::PrinterChain(const ComposedLanguage& language)
    : default_(std::make_shared<BlockPrinter>()) {
  for (const auto& f : language.fragments) lineage_[f.name] = f.lineage;
}

void PrinterChain::add(std::string fragment, std::shared_ptr<const PrettyPrinter> printer) {
  printers_[std::move(fragment)] = std::move(printer);
}

const PrettyPrinter& PrinterChain::printer_for(const std::string& fragment) const {
  if (auto it = printers_.find(fragment); it != printers_.end()) return *it->second;
  if (auto l = lineage_.find(fragment); l != lineage_.end()) {
    for (const auto& super : l->second) {
      if (auto it = printers_.find(super); it != printers_.end()) return *it->second;
    }
  }
  return *default_;
}

void PrinterChain::print(const SyntaxNode& node, PrintContext& ctx) const {
  printer_for(node.fragment).print(node, ctx, *this);
}

std::string PrinterChain::format(const SyntaxNode& root, const std::vector<Token>& tokens,
                                 const Lexer& lexer) const {
  PrintContext ctx(lexer, tokens);
  print(root, ctx);
  return ctx.finish();
}

}  // namespace fragmentc
