#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fragmentc/editor_services.hpp"

// Hand-written components for the message sequence chart example language.
namespace fragmentc::demo {

inline constexpr std::string_view kTraceAction = "mc.examples.msc.msc.action.GenerateTraceAction";
inline constexpr std::string_view kComposeAction = "mc.examples.msc.msc.compose.ComposeAction";
inline constexpr std::string_view kMscPrinter = "mc.examples.msc.msc.prettyprint.MSCConcretePrettyPrinter";
inline constexpr std::string_view kJavaPrinter = "mc.examples.msc.java.JavaDSLConcretePrettyPrinter";

/// Duplicate instance names within one chart.
std::vector<ProblemReport> symtab_pass(const SyntaxNode& root, std::string_view file, const DocumentLookup&);
/// Send and receive events whose peer names no declared instance.
std::vector<ProblemReport> check_pass(const SyntaxNode& root, std::string_view file, const DocumentLookup&);

/// Simulates the chart: a send is always enabled, a receive once its message
/// is pending; the first enabled instance moves. Writes `<doc>.trace` with one
/// `instance.out|in message` line per step.
ActionResult generate_trace(const EditorActionRequest& request, const ActionEnvironment& env);

/// Vertical composition of two or more charts: instances with equal names
/// merge, events appended in file order; methods follow the instances.
ActionResult compose_charts(const std::map<std::string, std::string>& filesToProjects,
                            const ActionEnvironment& env);

void register_msc_components(ComponentRegistry& registry);
ComponentRegistry default_registry();

}  // namespace fragmentc::demo
