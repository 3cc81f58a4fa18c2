#include "fragmentc/demo/msc_components.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <tuple>

#include "fragmentc/grammar_loader.hpp"

namespace fragmentc::demo {

namespace {

std::vector<const SyntaxNode*> children_named(const SyntaxNode& node, std::string_view local) {
  std::vector<const SyntaxNode*> out;
  for (const auto& c : node.children) {
    if (c.local_name() == local) out.push_back(&c);
  }
  return out;
}

std::vector<const SyntaxNode*> charts(const SyntaxNode& root) {
  std::vector<const SyntaxNode*> out;
  walk(root, [&](const SyntaxNode& n) {
    if (n.local_name() == "MSC") out.push_back(&n);
  });
  return out;
}

std::string_view slice(std::string_view text, const Span& span) {
  return text.substr(span.start.offset, span.end.offset - span.start.offset);
}

ProblemReport at_node(std::string message, std::string_view file, const SyntaxNode& node, const char* source) {
  return make_error(std::move(message), std::string(file), node.span.start.line, node.span.start.column, source);
}

std::optional<std::string> read_document(const std::string& path, const ActionEnvironment& env) {
  if (env.workspace) {
    if (auto text = env.workspace(path)) return text;
  }
  return read_file(path);
}

}  // namespace

std::vector<ProblemReport> symtab_pass(const SyntaxNode& root, std::string_view file, const DocumentLookup&) {
  std::vector<ProblemReport> out;
  for (const SyntaxNode* chart : charts(root)) {
    std::set<std::string> seen;
    for (const SyntaxNode* inst : children_named(*chart, "Instance")) {
      auto name = inst->text("name").value_or("");
      if (!seen.insert(name).second) out.push_back(at_node("duplicate instance " + name, file, *inst, "symtab"));
    }
  }
  return out;
}

std::vector<ProblemReport> check_pass(const SyntaxNode& root, std::string_view file, const DocumentLookup&) {
  std::vector<ProblemReport> out;
  for (const SyntaxNode* chart : charts(root)) {
    std::set<std::string> declared;
    auto instances = children_named(*chart, "Instance");
    for (const SyntaxNode* inst : instances) declared.insert(inst->text("name").value_or(""));
    for (const SyntaxNode* inst : instances) {
      for (const auto& ev : inst->children) {
        std::optional<std::string> peer;
        if (ev.local_name() == "SendEvent") peer = ev.text("receiver");
        if (ev.local_name() == "ReceiveEvent") peer = ev.text("sender");
        if (peer && !declared.count(*peer)) out.push_back(at_node("unknown instance " + *peer, file, ev, "check"));
      }
    }
  }
  return out;
}

ActionResult generate_trace(const EditorActionRequest& request, const ActionEnvironment& env) {
  if (!env.engine) return ActionResult::error("no parser available", request.path);
  auto outcome = env.engine->parse(request.text, request.path);
  if (!outcome.root) return {Reports{outcome.problems}};

  struct Step {
    bool send;
    std::string message;
    std::string peer;
  };
  struct Lifeline {
    std::string name;
    std::vector<Step> steps;
    std::size_t next = 0;
  };
  std::vector<Lifeline> lines;
  for (const SyntaxNode* chart : charts(*outcome.root)) {
    for (const SyntaxNode* inst : children_named(*chart, "Instance")) {
      Lifeline l{inst->text("name").value_or(""), {}, 0};
      for (const auto& ev : inst->children) {
        if (ev.local_name() == "SendEvent") {
          l.steps.push_back({true, ev.text("message").value_or(""), ev.text("receiver").value_or("")});
        } else if (ev.local_name() == "ReceiveEvent") {
          l.steps.push_back({false, ev.text("message").value_or(""), ev.text("sender").value_or("")});
        }
      }
      lines.push_back(std::move(l));
    }
  }

  // Pending messages as (from, to, message).
  std::multiset<std::tuple<std::string, std::string, std::string>> pending;
  std::string trace;
  for (bool progressed = true; progressed;) {
    progressed = false;
    for (auto& l : lines) {
      if (l.next >= l.steps.size()) continue;
      const Step& s = l.steps[l.next];
      if (s.send) {
        pending.emplace(l.name, s.peer, s.message);
        trace += l.name + ".out " + s.message + "\n";
      } else {
        auto it = pending.find({s.peer, l.name, s.message});
        if (it == pending.end()) continue;
        pending.erase(it);
        trace += l.name + ".in " + s.message + "\n";
      }
      ++l.next;
      progressed = true;
      break;
    }
  }
  for (const auto& l : lines) {
    if (l.next < l.steps.size()) {
      return ActionResult::error("trace blocked: instance " + l.name + " waits for " + l.steps[l.next].message,
                                 request.path);
    }
  }
  std::filesystem::path out(request.path.empty() ? "document" : request.path);
  out.replace_extension(".trace");
  return {NewFiles{{{out.string(), trace}}}};
}

ActionResult compose_charts(const std::map<std::string, std::string>& filesToProjects,
                            const ActionEnvironment& env) {
  if (filesToProjects.size() < 2) return ActionResult::error("compose requires at least 2 files");
  if (!env.engine) return ActionResult::error("no parser available");

  struct Merged {
    std::string name;
    std::vector<std::string> events;
  };
  std::string chartName;
  std::vector<Merged> instances;
  std::vector<std::string> methods;
  for (const auto& [path, project] : filesToProjects) {
    auto text = read_document(path, env);
    if (!text) return ActionResult::error("cannot read " + path, path);
    auto outcome = env.engine->parse(*text, path);
    if (!outcome.root) return {Reports{outcome.problems}};
    for (const SyntaxNode* chart : charts(*outcome.root)) {
      if (chartName.empty()) chartName = chart->text("name").value_or("composed");
      for (const auto& c : chart->children) {
        if (c.local_name() != "Instance") {
          methods.emplace_back(slice(*text, c.span));
          continue;
        }
        auto name = c.text("name").value_or("");
        auto it = std::find_if(instances.begin(), instances.end(), [&](const Merged& m) { return m.name == name; });
        if (it == instances.end()) it = instances.insert(instances.end(), Merged{name, {}});
        for (const auto& ev : c.children) it->events.emplace_back(slice(*text, ev.span));
      }
    }
  }

  std::string merged = "msc " + chartName + " {\n";
  for (const auto& inst : instances) {
    merged += "instance " + inst.name + " {\n";
    for (const auto& ev : inst.events) merged += ev + "\n";
    merged += "}\n";
  }
  for (const auto& m : methods) merged += m + "\n";
  merged += "}\n";

  auto first = std::filesystem::path(filesToProjects.begin()->first);
  std::string outPath = (first.parent_path() / (chartName + ".composed.msc")).string();
  auto reparsed = env.engine->parse(merged, outPath);
  if (!reparsed.root) return {Reports{reparsed.problems}};
  if (env.printers) merged = format(*reparsed.root, reparsed.tokens, *env.printers, env.engine->lexer());
  return {NewFiles{{{outPath, merged}}}};
}

void register_msc_components(ComponentRegistry& registry) {
  registry.add_workflow("symtab", symtab_pass);
  registry.add_workflow("check", check_pass);
  registry.add_editor_action(std::string(kTraceAction), generate_trace);
  registry.add_navigator_action(std::string(kComposeAction), compose_charts);
  registry.add_printer(std::string(kMscPrinter), "MSC", std::make_shared<BlockPrinter>());
  registry.add_printer(std::string(kJavaPrinter), "JavaDSL", std::make_shared<CStylePrinter>());
}

ComponentRegistry default_registry() {
  ComponentRegistry registry;
  register_msc_components(registry);
  return registry;
}

}  // namespace fragmentc::demo
