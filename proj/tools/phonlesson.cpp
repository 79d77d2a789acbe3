// phonlesson: validate, compile, inspect, preview and serve a lesson project.

#include <CLI11.hpp>

#include <iostream>

#include "phonlesson/json_io.hpp"
#include "phonlesson/project.hpp"
#include "phonlesson/service.hpp"
#include "phonlesson/timegraph.hpp"

namespace {

using namespace phonlesson;

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& out) {
  for (const auto& d : diagnostics) out << format_diagnostic(d) << "\n";
}

int run_validate(const Project& project, const CompileOptions& options) {
  const auto diagnostics = cmd_validate(project, options);
  print_diagnostics(diagnostics, std::cout);
  const auto errors = std::count_if(diagnostics.begin(), diagnostics.end(),
                                    [](const Diagnostic& d) { return d.severity == Severity::Error; });
  std::cout << errors << " error(s), " << diagnostics.size() - static_cast<std::size_t>(errors) << " warning(s)\n";
  return errors == 0 ? 0 : 1;
}

int run_compile(const Project& project, const CompileOptions& options) {
  const CompileResult result = cmd_compile(project, options);
  print_diagnostics(result.diagnostics, std::cerr);
  if (!result.ok()) {
    std::cerr << "compilation failed; nothing written\n";
    return 1;
  }
  std::cout << "wrote " << project.smil_file().string() << " (total " << format_clock(result.timeline->totalMs)
            << ", " << result.timeline->segments.size() << " segment(s))\n";
  return 0;
}

int run_inspect(const Project& project, const CompileOptions& options, std::optional<std::int64_t> at) {
  LoadedLesson loaded = load_project(project);
  if (!loaded.lesson || has_errors(loaded.diagnostics)) {
    print_diagnostics(loaded.diagnostics, std::cerr);
    return 1;
  }
  const CompileResult result = compile_lesson(*loaded.lesson, options);
  if (!result.ok()) {
    print_diagnostics(result.diagnostics, std::cerr);
    return 1;
  }
  if (at) {
    const TimeGraph graph = parse_smil(result.smil);
    std::cout << active_set_to_json(*at, active_at(graph, *at)).dump(2) << "\n";
  } else {
    std::cout << timeline_to_json(*result.timeline).dump(2) << "\n";
  }
  return 0;
}

int run_preview(const Project& project, const CompileOptions& options) {
  const CompileResult result = cmd_preview(project, options);
  print_diagnostics(result.diagnostics, std::cerr);
  if (!result.ok()) return 1;
  std::cout << "wrote " << project.preview_file().string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phonetics lesson compiler: .sph lesson projects to SMIL 3.0"};
  app.require_subcommand(1);

  std::string project_dir = ".";
  std::string label_mode = "numbered";
  int port = 8080;
  std::string host = "127.0.0.1";
  std::optional<std::int64_t> at;

  app.add_option("--project", project_dir, "Project directory containing lesson.sph")->capture_default_str();
  app.add_option("--label-mode", label_mode, "Index labels: numbered or text")
      ->check(CLI::IsMember({"numbered", "text"}))
      ->capture_default_str();

  auto* validate = app.add_subcommand("validate", "Check the lesson, its characters and audio");
  auto* compile = app.add_subcommand("compile", "Write dist/lesson.smil and copy audio");
  auto* inspect = app.add_subcommand("inspect", "Print the timeline as JSON");
  inspect->add_option("--at", at, "Print the items active at this time (ms) instead");
  auto* preview = app.add_subcommand("preview", "Write dist/preview.html");
  auto* serve = app.add_subcommand("serve", "Run the HTTP authoring API");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();

  // Accept the global options after the subcommand name as well.
  for (auto* sub : {validate, compile, inspect, preview, serve}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const Project project{project_dir};
  CompileOptions options;
  options.labels = label_mode == "text" ? IndexLabelMode::RuleText : IndexLabelMode::Numbered;

  try {
    if (*validate) return run_validate(project, options);
    if (*compile) return run_compile(project, options);
    if (*inspect) return run_inspect(project, options, at);
    if (*preview) return run_preview(project, options);
    if (*serve) return run_service(project, host, port, options);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
