#include "fragmentc/diagnostics.hpp"

#include <algorithm>

namespace fragmentc {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Error:
      return "error";
    case Severity::Warning:
      return "warning";
    case Severity::Info:
      return "info";
  }
  return "error";
}

ProblemReport make_error(std::string message, std::string file, int line, int column,
                         std::string source) {
  return {Severity::Error, std::move(message), std::move(file), line, column, std::move(source)};
}

ProblemReport make_warning(std::string message, std::string file, int line, int column,
                           std::string source) {
  return {Severity::Warning, std::move(message), std::move(file), line, column,
          std::move(source)};
}

bool has_errors(std::span<const ProblemReport> reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const ProblemReport& r) { return r.severity == Severity::Error; });
}

std::string format_report(const ProblemReport& report) {
  std::string out(to_string(report.severity));
  out += ' ';
  out += report.file;
  out += ':' + std::to_string(report.line) + ':' + std::to_string(report.column) + ' ';
  out += report.message;
  return out;
}

}  // namespace fragmentc
