#include "phonlesson/service.hpp"

#include <httplib.h>

#include <charconv>
#include <filesystem>
#include <iostream>

#include "phonlesson/audio_probe.hpp"
#include "phonlesson/json_io.hpp"
#include "phonlesson/utf8.hpp"

namespace phonlesson {

namespace fs = std::filesystem;

LessonService::LessonService(Project project, CompileOptions options)
    : project_(std::move(project)), options_(std::move(options)) {
  if (fs::exists(project_.lesson_file())) {
    lesson_ = load_sph(read_file(project_.lesson_file()));
    // Missing files stay unprobed and surface as validation errors later.
    probe_lesson_audio(lesson_, project_.asset_dir(lesson_));
  } else {
    lesson_ = new_lesson(StyledText{});
    lesson_.set_asset_base("audio/");
  }
}

std::uint64_t LessonService::revision() const {
  std::lock_guard lock(mutex_);
  return revision_;
}

Lesson LessonService::snapshot() const { return read().lesson; }

LessonService::Snapshot LessonService::read() const {
  std::lock_guard lock(mutex_);
  return Snapshot{lesson_, revision_};
}

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownNode: return 404;
    case ErrorKind::NotRiff:
    case ErrorKind::UnsupportedCodec:
    case ErrorKind::MissingChunk:
    case ErrorKind::CorruptHeader: return 422;
    case ErrorKind::Io: return 500;
    default: return 400;
  }
}

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, const std::string& message, Json extra = Json::object()) {
  Json body{{"error", message}};
  for (auto& [k, v] : extra.items()) body[k] = v;
  send_json(res, status, body);
}

class HttpFailure : public std::runtime_error {
 public:
  HttpFailure(int status, const std::string& message, Json extra = Json::object())
      : std::runtime_error(message), status(status), extra(std::move(extra)) {}
  int status;
  Json extra;
};

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw HttpFailure(400, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

StyledText text_from_fragment(const std::string& fragment) {
  XhtmlParse parsed = parse_xhtml(fragment);
  Json violations = Json::array();
  std::size_t base = 0;
  for (const auto& run : parsed.text.runs) {
    for (const auto& v : validate_chars(run.text)) {
      violations.push_back(Json{{"offset", base + v.offset}, {"codepoint", static_cast<std::uint32_t>(v.codepoint)}});
    }
    base += utf8::decode(run.text).size();
  }
  if (!violations.empty()) {
    throw HttpFailure(400, "text contains disallowed characters", Json{{"violations", violations}});
  }
  return parsed.text;
}

NodeRef node_from(const std::string& address) {
  const auto node = NodeRef::parse_address(address);
  if (!node) throw HttpFailure(404, "bad node address '" + address + "'");
  return *node;
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::parse_error& e) {
    throw HttpFailure(400, std::string("request body is not JSON: ") + e.what());
  }
}

std::string text_field(const Json& body) {
  if (!body.contains("text") || !body["text"].is_string()) {
    throw HttpFailure(400, "body needs a string field 'text' (XHTML fragment)");
  }
  return body["text"].get<std::string>();
}

}  // namespace

struct ServiceRoutes {
  LessonService& svc;

  // Runs `fn` under the writer lock after checking If-Match; persists the
  // lesson and bumps the revision when `fn` returns.
  template <typename Fn>
  void mutate(const httplib::Request& req, httplib::Response& res, Fn&& fn) const {
    guarded(res, [&]() {
      if (!req.has_header("If-Match")) throw HttpFailure(428, "mutations require an If-Match revision header");
      std::string tag = req.get_header_value("If-Match");
      if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
      std::uint64_t expected = 0;
      const auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), expected);
      if (tag.empty() || ec != std::errc() || ptr != tag.data() + tag.size()) {
        throw HttpFailure(400, "If-Match must carry a revision number");
      }

      std::lock_guard lock(svc.mutex_);
      if (expected != svc.revision_) {
        throw HttpFailure(409, "stale revision", Json{{"revision", svc.revision_}});
      }
      Lesson draft = svc.lesson_;
      Json body = fn(draft);
      write_file_atomic(svc.project_.lesson_file(), save_sph(draft));
      svc.lesson_ = std::move(draft);
      ++svc.revision_;
      body["revision"] = svc.revision_;
      res.set_header("ETag", "\"" + std::to_string(svc.revision_) + "\"");
      send_json(res, res.status == -1 || res.status == 0 ? 200 : res.status, body);
    });
  }

  template <typename Fn>
  static void guarded(httplib::Response& res, Fn&& fn) {
    try {
      fn();
    } catch (const HttpFailure& e) {
      send_error(res, e.status, e.what(), e.extra);
    } catch (const ValidationError& e) {
      send_error(res, 400, e.what(), Json{{"diagnostics", diagnostics_to_json(e.diagnostics())}});
    } catch (const Error& e) {
      send_error(res, status_for(e.kind()), e.what(), Json{{"kind", std::string(to_string(e.kind()))}});
    }
  }

  void install(httplib::Server& server) const {
    server.Get("/lesson", [self = *this](const httplib::Request&, httplib::Response& res) {
      const auto snap = self.svc.read();
      res.set_header("ETag", "\"" + std::to_string(snap.revision) + "\"");
      send_json(res, 200, Json{{"revision", snap.revision}, {"lesson", lesson_to_json(snap.lesson)}});
    });

    server.Put("/lesson/title", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        lesson.set_title(text_from_fragment(req.body));
        return Json::object();
      });
    });

    server.Post("/rules", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const Json body = parse_body(req);
        std::optional<std::size_t> position;
        if (body.contains("position")) {
          if (!body["position"].is_number_unsigned()) throw HttpFailure(400, "position must be a non-negative integer");
          position = body["position"].get<std::size_t>();
        }
        const int id = lesson.add_rule(text_from_fragment(text_field(body)), position);
        res.status = 201;
        return Json{{"id", id}, {"address", NodeRef::rule(id).address()}};
      });
    });

    server.Delete(R"(/rules/(\d+))", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const int removed = lesson.delete_rule(parse_int(req.matches[1], "rule id"));
        return Json{{"removed", removed}};
      });
    });

    server.Post(R"(/rules/(\d+)/examples)", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const int rule_id = parse_int(req.matches[1], "rule id");
        const int id = lesson.add_example(rule_id, text_from_fragment(text_field(parse_body(req))));
        res.status = 201;
        return Json{{"id", id}, {"address", NodeRef::example(rule_id, id).address()}};
      });
    });

    server.Delete(R"(/rules/(\d+)/examples/(\d+))", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const int removed =
            lesson.delete_example(parse_int(req.matches[1], "rule id"), parse_int(req.matches[2], "example id"));
        return Json{{"removed", removed}};
      });
    });

    server.Put(R"(/nodes/([A-Za-z0-9]+)/text)", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const NodeRef node = node_from(req.matches[1]);
        XhtmlParse parsed = parse_xhtml(req.body);
        lesson.set_text(node, text_from_fragment(req.body));
        return Json{{"warnings", parsed.warnings}};
      });
    });

    server.Post(R"(/nodes/([A-Za-z0-9]+)/audio)", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        const NodeRef node = node_from(req.matches[1]);
        if (!lesson.contains(node)) throw Error(ErrorKind::UnknownNode, node.describe() + " does not exist");
        const auto* data = reinterpret_cast<const std::uint8_t*>(req.body.data());
        AudioClip clip = probe_wav(std::span<const std::uint8_t>(data, req.body.size()));
        clip.path = node.address() + ".wav";
        write_file_atomic(self.svc.project_.asset_dir(lesson) / clip.path, req.body);
        lesson.attach_audio(node, clip);
        return Json{{"src", clip.path},
                    {"durationMs", clip.durationMs},
                    {"sampleRateHz", clip.sampleRateHz},
                    {"channels", clip.channels},
                    {"bitsPerSample", clip.bitsPerSample}};
      });
    });

    server.Delete(R"(/nodes/([A-Za-z0-9]+)/audio)", [self = *this](const httplib::Request& req, httplib::Response& res) {
      self.mutate(req, res, [&](Lesson& lesson) {
        lesson.attach_audio(node_from(req.matches[1]), std::nullopt);
        return Json::object();
      });
    });

    server.Get("/timeline", [self = *this](const httplib::Request&, httplib::Response& res) {
      self.guarded(res, [&]() {
        const auto snap = self.svc.read();
        send_json(res, 200, timeline_to_json(compute_timeline(snap.lesson)));
      });
    });

    server.Post("/compile", [self = *this](const httplib::Request&, httplib::Response& res) {
      self.guarded(res, [&]() {
        const auto snap = self.svc.read();
        CompileResult result = compile_lesson(snap.lesson, self.svc.options_);
        if (!result.ok()) throw ValidationError(result.diagnostics);
        write_dist(self.svc.project_, snap.lesson, result.smil);
        send_json(res, 200, Json{{"revision", snap.revision},
                                 {"smil", result.smil},
                                 {"timeline", timeline_to_json(*result.timeline)},
                                 {"diagnostics", diagnostics_to_json(result.diagnostics)}});
      });
    });

    server.Get("/palette", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, palette_to_json());
    });

    server.Get("/dist/lesson.smil", [self = *this](const httplib::Request&, httplib::Response& res) {
      self.guarded(res, [&]() {
        if (!fs::exists(self.svc.project_.smil_file())) throw HttpFailure(404, "lesson has not been compiled");
        res.status = 200;
        res.set_content(read_file(self.svc.project_.smil_file()), "application/smil+xml; charset=utf-8");
      });
    });
  }
};

void LessonService::register_routes(httplib::Server& server) {
  ServiceRoutes{*this}.install(server);
}

int run_service(const Project& project, const std::string& host, int port, const CompileOptions& options) {
  LessonService service(project, options);
  httplib::Server server;
  service.register_routes(server);
  std::cerr << "serving " << project.root.string() << " on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace phonlesson
