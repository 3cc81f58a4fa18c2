#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/lexer.hpp"
#include "fragmentc/syntax_tree.hpp"

namespace fragmentc {

struct ComposedLanguage;

/// Output buffer shared by all printers of one format run. Tracks line
/// starts and indentation, and re-emits the source comments that fall
/// between consumed tokens.
class PrintContext {
 public:
  PrintContext(const Lexer& lexer, const std::vector<Token>& tokens);

  /// Emits `text` separated from the previous token by one space.
  void word(std::string_view text);
  /// Emits `text` directly after the previous token when that lexes back
  /// to the same two tokens, otherwise like `word`.
  void attach(std::string_view text);
  /// The next emitted token is attached.
  void glue_next() { glue_ = true; }
  /// Ends the current line unless it is empty.
  void newline();
  void indent() { ++depth_; }
  void dedent() {
    if (depth_ > 0) --depth_;
  }

  /// Emits the comments preceding token `index` that were not emitted yet.
  void comments_before(std::size_t index);
  std::string finish();

 private:
  void emit(std::string_view text, bool spaced);

  const Lexer& lexer_;
  const std::vector<Token>& tokens_;
  std::string out_;
  std::string last_;
  std::size_t nextToken_ = 0;
  int depth_ = 0;
  bool lineStart_ = true;
  bool glue_ = false;
};

class PrinterChain;

class PrettyPrinter {
 public:
  virtual ~PrettyPrinter() = default;
  /// Prints `node`; sub-nodes go back through `chain`.
  virtual void print(const SyntaxNode& node, PrintContext& ctx, const PrinterChain& chain) const = 0;
};

/// Brace-block layout: `{` opens an indented block, `}` closes it on its
/// own line, `;` ends a line, other tokens are space separated.
class BlockPrinter : public PrettyPrinter {
 public:
  void print(const SyntaxNode& node, PrintContext& ctx, const PrinterChain& chain) const override;

 protected:
  virtual void token(std::string_view text, PrintContext& ctx) const;
};

/// BlockPrinter plus C-like spacing: no space around `.` or inside `( )`.
class CStylePrinter : public BlockPrinter {
 protected:
  void token(std::string_view text, PrintContext& ctx) const override;
};

/// Dispatches each node to the printer registered for its fragment, then for
/// the nearest supergrammar, then to the default printer.
class PrinterChain {
 public:
  explicit PrinterChain(const ComposedLanguage& language);

  void add(std::string fragment, std::shared_ptr<const PrettyPrinter> printer);
  void print(const SyntaxNode& node, PrintContext& ctx) const;

  /// Formats a whole tree; `tokens` are the tokens it was parsed from.
  std::string format(const SyntaxNode& root, const std::vector<Token>& tokens, const Lexer& lexer) const;

 private:
  const PrettyPrinter& printer_for(const std::string& fragment) const;

  std::map<std::string, std::vector<std::string>> lineage_;
  std::map<std::string, std::shared_ptr<const PrettyPrinter>> printers_;
  std::shared_ptr<const PrettyPrinter> default_;
};

}  // namespace fragmentc
