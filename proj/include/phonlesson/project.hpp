#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phonlesson/error.hpp"
#include "phonlesson/lesson.hpp"
#include "phonlesson/scheduler.hpp"
#include "phonlesson/smil_codegen.hpp"

namespace phonlesson {

// A lesson project on disk: <root>/lesson.sph, audio under <root>/<asset-base>,
// build output under <root>/dist. Compilation writes only inside dist/.
struct Project {
  std::filesystem::path root;

  std::filesystem::path lesson_file() const { return root / "lesson.sph"; }
  std::filesystem::path asset_dir(const Lesson& lesson) const { return root / lesson.asset_base(); }
  std::filesystem::path dist_dir() const { return root / "dist"; }
  std::filesystem::path smil_file() const { return dist_dir() / "lesson.smil"; }
  std::filesystem::path preview_file() const { return dist_dir() / "preview.html"; }
};

struct CompileOptions {
  LayoutConfig layout;
  IndexLabelMode labels = IndexLabelMode::Numbered;
};

struct LoadedLesson {
  std::optional<Lesson> lesson;  // absent when lesson.sph could not be read
  std::vector<Diagnostic> diagnostics;
};

// Probes every referenced wav under the asset directory, filling durations.
// Missing or unreadable files become error diagnostics addressed to the node.
std::vector<Diagnostic> probe_lesson_audio(Lesson& lesson, const std::filesystem::path& asset_dir);

// Reads lesson.sph and probes its audio.
LoadedLesson load_project(const Project& project);

struct CompileResult {
  std::vector<Diagnostic> diagnostics;
  std::optional<Timeline> timeline;  // present iff compilation succeeded
  std::string smil;

  bool ok() const { return timeline.has_value(); }
};

// In-memory pipeline on an already probed lesson: validate, schedule, emit.
CompileResult compile_lesson(const Lesson& lesson, const CompileOptions& options = {});

std::vector<Diagnostic> cmd_validate(const Project& project, const CompileOptions& options = {});

// Writes dist/lesson.smil and copies referenced audio into dist/. Nothing is
// written when validation fails.
CompileResult cmd_compile(const Project& project, const CompileOptions& options = {});

// Writes the compiled SMIL plus audio for an in-memory lesson.
void write_dist(const Project& project, const Lesson& lesson, const std::string& smil);

// Writes dist/preview.html (and audio). Returns the compile result.
CompileResult cmd_preview(const Project& project, const CompileOptions& options = {});

// Atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace phonlesson
