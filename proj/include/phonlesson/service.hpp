#pragma once

#include <cstdint>
#include <mutex>
#include <string>

#include "phonlesson/lesson.hpp"
#include "phonlesson/project.hpp"

namespace httplib {
class Server;
}

namespace phonlesson {

// HTTP facade over one project. Mutations are serialized behind a mutex and
// guarded by an optimistic revision counter (If-Match); each one rewrites
// lesson.sph. Reads and compiles work on a snapshot.
class LessonService {
 public:
  explicit LessonService(Project project, CompileOptions options = {});

  void register_routes(httplib::Server& server);

  std::uint64_t revision() const;
  Lesson snapshot() const;

 private:
  struct Snapshot {
    Lesson lesson;
    std::uint64_t revision;
  };
  Snapshot read() const;

  Project project_;
  CompileOptions options_;
  mutable std::mutex mutex_;
  Lesson lesson_;
  std::uint64_t revision_ = 1;

  friend struct ServiceRoutes;
};

// Blocks serving on host:port until the process is stopped.
int run_service(const Project& project, const std::string& host, int port, const CompileOptions& options = {});

}  // namespace phonlesson
