#include "phonlesson/project.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <system_error>

#include "phonlesson/audio_probe.hpp"

namespace phonlesson {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot replace " + path.string() + ": " + ec.message());
}

namespace {

template <typename Fn>
void for_each_audio(const Lesson& lesson, Fn&& fn) {
  for (const auto& rule : lesson.rules()) {
    if (rule.audio) fn(NodeRef::rule(rule.id), *rule.audio);
    for (const auto& ex : rule.examples) {
      if (ex.audio) fn(NodeRef::example(rule.id, ex.id), *ex.audio);
    }
  }
}

}  // namespace

std::vector<Diagnostic> probe_lesson_audio(Lesson& lesson, const fs::path& asset_dir) {
  std::vector<Diagnostic> out;
  std::vector<std::pair<NodeRef, AudioClip>> probed;
  for_each_audio(lesson, [&](const NodeRef& node, const AudioClip& clip) {
    const fs::path file = asset_dir / clip.path;
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) {
      out.push_back({Severity::Error, node.describe(), "audio file '" + clip.path + "' not found"});
      return;
    }
    try {
      probed.emplace_back(node, probe_wav_file(file.string()));
    } catch (const Error& e) {
      out.push_back({Severity::Error, node.describe(), "audio file '" + clip.path + "': " + e.what()});
    }
  });
  for (const auto& [node, clip] : probed) lesson.update_probe(node, clip);
  return out;
}

LoadedLesson load_project(const Project& project) {
  LoadedLesson result;
  std::string text;
  try {
    text = read_file(project.lesson_file());
    result.lesson = load_sph(text);
  } catch (const Error& e) {
    result.diagnostics.push_back({Severity::Error, "lesson.sph", e.what()});
    return result;
  }
  result.diagnostics = probe_lesson_audio(*result.lesson, project.asset_dir(*result.lesson));
  return result;
}

CompileResult compile_lesson(const Lesson& lesson, const CompileOptions& options) {
  CompileResult result;
  result.diagnostics = validate_lesson(lesson);
  for (const auto& problem : layout_problems(options.layout)) {
    result.diagnostics.push_back({Severity::Error, "layout", problem});
  }
  if (has_errors(result.diagnostics)) return result;
  Timeline timeline = compute_timeline(lesson);
  result.smil = generate_smil(lesson, timeline, options.layout, options.labels);
  result.timeline = std::move(timeline);
  return result;
}

namespace {

// Loaded lesson plus all diagnostics; missing audio is reported once by the
// probe, so the matching "not probed" validation errors are dropped.
std::pair<std::optional<Lesson>, std::vector<Diagnostic>> checked_project(const Project& project,
                                                                          const CompileOptions& options,
                                                                          CompileResult* compiled) {
  LoadedLesson loaded = load_project(project);
  if (!loaded.lesson) return {std::nullopt, loaded.diagnostics};
  CompileResult result = compile_lesson(*loaded.lesson, options);
  std::vector<Diagnostic> all = loaded.diagnostics;
  for (auto& d : result.diagnostics) {
    const bool duplicate = d.message.ends_with("has no probed duration") &&
                           std::any_of(loaded.diagnostics.begin(), loaded.diagnostics.end(),
                                       [&](const Diagnostic& p) { return p.node == d.node; });
    if (!duplicate) all.push_back(d);
  }
  if (compiled != nullptr) {
    *compiled = std::move(result);
    compiled->diagnostics = all;
  }
  return {std::move(loaded.lesson), all};
}

}  // namespace

std::vector<Diagnostic> cmd_validate(const Project& project, const CompileOptions& options) {
  return checked_project(project, options, nullptr).second;
}

void write_dist(const Project& project, const Lesson& lesson, const std::string& smil) {
  const fs::path dist = project.dist_dir();
  const fs::path assets = project.asset_dir(lesson);
  for_each_audio(lesson, [&](const NodeRef&, const AudioClip& clip) {
    check_relative_path(clip.path, "audio");
    const fs::path target = dist / clip.path;
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    fs::copy_file(assets / clip.path, target, fs::copy_options::overwrite_existing, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot copy " + clip.path + ": " + ec.message());
  });
  write_file_atomic(project.smil_file(), smil);
}

CompileResult cmd_compile(const Project& project, const CompileOptions& options) {
  CompileResult result;
  auto [lesson, diagnostics] = checked_project(project, options, &result);
  if (!lesson) {
    result.diagnostics = diagnostics;
    return result;
  }
  if (!result.ok()) return result;
  write_dist(project, *lesson, result.smil);
  return result;
}

CompileResult cmd_preview(const Project& project, const CompileOptions& options) {
  CompileResult result;
  auto [lesson, diagnostics] = checked_project(project, options, &result);
  if (!lesson) {
    result.diagnostics = diagnostics;
    return result;
  }
  if (!result.ok()) return result;
  write_dist(project, *lesson, result.smil);
  write_file_atomic(project.preview_file(),
                    export_preview_html(*lesson, *result.timeline, options.layout, options.labels));
  return result;
}

}  // namespace phonlesson
