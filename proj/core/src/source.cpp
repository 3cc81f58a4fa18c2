#include "fragmentc/source.hpp"

#include <algorithm>

namespace fragmentc {

LineIndex::LineIndex(std::string_view text) : text_(text) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') line_starts_.push_back(i + 1);
  }
}

Position LineIndex::position(std::size_t offset) const {
  offset = std::min(offset, text_.size());
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  auto line = static_cast<std::size_t>(it - line_starts_.begin());
  Position pos;
  pos.line = static_cast<int>(line);
  pos.column = static_cast<int>(offset - line_starts_[line - 1]) + 1;
  pos.offset = offset;
  return pos;
}

std::string_view LineIndex::line_text(int line) const {
  if (line < 1 || static_cast<std::size_t>(line) > line_starts_.size()) return {};
  std::size_t begin = line_starts_[line - 1];
  std::size_t end = static_cast<std::size_t>(line) < line_starts_.size()
                        ? line_starts_[line] - 1
                        : text_.size();
  auto view = text_.substr(begin, end - begin);
  if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
  return view;
}

int count_lines(std::string_view text) {
  int lines = 1 + static_cast<int>(std::count(text.begin(), text.end(), '\n'));
  if (!text.empty() && text.back() == '\n') --lines;
  return std::max(lines, 1);
}

}  // namespace fragmentc
