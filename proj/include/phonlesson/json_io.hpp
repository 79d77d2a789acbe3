#pragma once

#include <nlohmann/json.hpp>

#include "phonlesson/error.hpp"
#include "phonlesson/lesson.hpp"
#include "phonlesson/scheduler.hpp"
#include "phonlesson/timegraph.hpp"

namespace phonlesson {

using Json = nlohmann::ordered_json;

Json timeline_to_json(const Timeline& timeline);
Json lesson_to_json(const Lesson& lesson);
Json active_set_to_json(std::int64_t tMs, const ActiveSet& active);
Json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);
Json palette_to_json();

}  // namespace phonlesson
