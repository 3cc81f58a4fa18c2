#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fragmentc {

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity severity);

/// A severity-tagged message anchored to a file position. Every component
/// (meta parser, composer, document parser, workflows) reports through this.
struct ProblemReport {
  Severity severity = Severity::Error;
  std::string message;
  std::string file;
  int line = 1;
  int column = 1;
  std::string source;

  friend bool operator==(const ProblemReport&, const ProblemReport&) = default;
};

ProblemReport make_error(std::string message, std::string file, int line, int column,
                         std::string source);
ProblemReport make_warning(std::string message, std::string file, int line, int column,
                           std::string source);

bool has_errors(std::span<const ProblemReport> reports);

/// `severity file:line:col message`, the CLI report line format.
std::string format_report(const ProblemReport& report);

/// Either a value (possibly accompanied by warnings) or a non-empty list of
/// problems containing at least one error.
template <class T>
class Result {
 public:
  Result(T value, std::vector<ProblemReport> warnings = {})
      : value_(std::move(value)), problems_(std::move(warnings)) {}

  static Result failure(std::vector<ProblemReport> problems) {
    Result r;
    r.problems_ = std::move(problems);
    return r;
  }
  static Result failure(ProblemReport problem) {
    return failure(std::vector<ProblemReport>{std::move(problem)});
  }

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!value_) throw std::logic_error("Result has no value: " + first_message());
    return *value_;
  }
  T& value() & {
    if (!value_) throw std::logic_error("Result has no value: " + first_message());
    return *value_;
  }
  T&& value() && {
    if (!value_) throw std::logic_error("Result has no value: " + first_message());
    return std::move(*value_);
  }
  const T* operator->() const { return &value(); }
  const T& operator*() const { return value(); }

  const std::vector<ProblemReport>& problems() const { return problems_; }
  std::vector<ProblemReport>& problems() { return problems_; }

 private:
  Result() = default;

  std::string first_message() const {
    return problems_.empty() ? std::string("<no report>") : problems_.front().message;
  }

  std::optional<T> value_;
  std::vector<ProblemReport> problems_;
};

}  // namespace fragmentc
