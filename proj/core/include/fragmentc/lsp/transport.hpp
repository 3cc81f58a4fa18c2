#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace fragmentc::lsp {

/// Reads one `Content-Length` framed message body. Returns nullopt at end of
/// input or when the header block is malformed.
std::optional<std::string> read_message(std::istream& in);

std::string frame(const nlohmann::json& message);
void write_message(std::ostream& out, const nlohmann::json& message);

}  // namespace fragmentc::lsp
