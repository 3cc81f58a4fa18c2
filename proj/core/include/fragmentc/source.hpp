#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fragmentc {

/// A location in a text buffer. Lines and columns are 1-based; columns count
/// bytes. `offset` is the 0-based byte offset.
struct Position {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;

  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position& a, const Position& b) {
    return a.offset <=> b.offset;
  }
};

/// Half-open region [start, end).
struct Span {
  Position start;
  Position end;

  friend bool operator==(const Span&, const Span&) = default;

  bool contains(const Span& other) const {
    return start.offset <= other.start.offset && other.end.offset <= end.offset;
  }
  bool empty() const { return start.offset == end.offset; }
};

/// Maps byte offsets of one text to line/column positions.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);

  Position position(std::size_t offset) const;
  std::size_t line_count() const { return line_starts_.size(); }
  /// Text of a 1-based line without its terminator.
  std::string_view line_text(int line) const;

 private:
  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

/// Number of lines in `text`, never less than one.
int count_lines(std::string_view text);

}  // namespace fragmentc
