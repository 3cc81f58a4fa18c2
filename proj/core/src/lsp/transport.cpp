#include "fragmentc/lsp/transport.hpp"

#include <cctype>
#include <string_view>

namespace fragmentc::lsp {

namespace {

bool iequals_prefix(std::string_view line, std::string_view prefix) {
  if (line.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(line[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::string> read_message(std::istream& in) {
  std::optional<std::size_t> length;
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!any) continue;  // tolerate blank lines between messages
      break;
    }
    any = true;
    constexpr std::string_view kLength = "content-length:";
    if (iequals_prefix(line, kLength)) {
      try {
        length = std::stoul(line.substr(kLength.size()));
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  if (!length) return std::nullopt;
  std::string body(*length, '\0');
  in.read(body.data(), static_cast<std::streamsize>(*length));
  if (static_cast<std::size_t>(in.gcount()) != *length) return std::nullopt;
  return body;
}

std::string frame(const nlohmann::json& message) {
  std::string body = message.dump();
  return "Content-Length: " + std::to_string(body.size()) + "\r\n\r\n" + body;
}

void write_message(std::ostream& out, const nlohmann::json& message) {
  out << frame(message);
  out.flush();
}

}  // namespace fragmentc::lsp
