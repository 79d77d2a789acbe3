#include "phonlesson/timegraph.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "phonlesson/error.hpp"
#include "phonlesson/xml.hpp"

namespace phonlesson {

std::int64_t parse_clock(std::string_view value) {
  const std::string original(value);
  auto bad = [&original]() { return Error(ErrorKind::BadClockValue, "bad clock value '" + original + "'"); };

  while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
  while (!value.empty() && value.back() == ' ') value.remove_suffix(1);

  std::int64_t scale = 1000;  // ms per unit; bare numbers are seconds
  if (value.ends_with("ms")) {
    scale = 1;
    value.remove_suffix(2);
  } else if (value.ends_with("min")) {
    scale = 60'000;
    value.remove_suffix(3);
  } else if (value.ends_with("h")) {
    scale = 3'600'000;
    value.remove_suffix(1);
  } else if (value.ends_with("s")) {
    value.remove_suffix(1);
  }
  if (value.empty()) throw bad();

  const auto dot = value.find('.');
  const std::string_view whole = value.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : value.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty())) throw bad();
  for (char c : whole) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
  }
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
  }
  if (whole.size() > 12) throw bad();

  std::int64_t units = 0;
  for (char c : whole) units = units * 10 + (c - '0');
  std::int64_t ms = units * scale;

  // Fractional part must land on a whole millisecond.
  std::int64_t denom = 1;
  std::int64_t num = 0;
  for (char c : frac) {
    if (denom > std::numeric_limits<std::int64_t>::max() / 100) throw bad();
    num = num * 10 + (c - '0');
    denom *= 10;
  }
  if (num != 0) {
    if ((num * scale) % denom != 0) throw bad();
    ms += num * scale / denom;
  }
  return ms;
}

namespace {

const std::set<std::string, std::less<>> kTimedElements = {"par", "seq", "audio", "smilText", "a"};

struct Placed {
  std::int64_t begin;
  std::int64_t end;
};

class Resolver {
 public:
  TimeGraph graph;

  void declare_regions(const xml::Node& head) {
    for (const xml::Node* child : head.elements()) {
      if (child->name != "layout") throw Error(ErrorKind::UnknownElement, "<" + child->name + "> in <head>");
      for (const xml::Node* item : child->elements()) {
        if (item->name == "root-layout") continue;
        if (item->name != "region") throw Error(ErrorKind::UnknownElement, "<" + item->name + "> in <layout>");
        const std::string* id = item->attribute("xml:id");
        if (id == nullptr) id = item->attribute("regionName");
        if (id == nullptr) throw Error(ErrorKind::SubsetViolation, "region without a name");
        graph.regions.insert(*id);
      }
    }
  }

  // Lays out `el` whose implicit begin is `sync_base`. `parent_end` is the
  // end of the enclosing par when that is known from an explicit dur.
  Placed place(const xml::Node& el, std::int64_t sync_base, std::optional<std::int64_t> parent_end) {
    if (!kTimedElements.contains(el.name)) {
      throw Error(ErrorKind::UnknownElement, "<" + el.name + "> at line " + std::to_string(el.line));
    }
    const std::int64_t begin = sync_base + clock_attr(el, "begin").value_or(0);
    const auto dur = clock_attr(el, "dur");
    if (const std::string* id = el.attribute("xml:id")) {
      if (!graph.anchors.emplace(*id, begin).second) {
        throw Error(ErrorKind::SubsetViolation, "xml:id '" + *id + "' appears twice");
      }
    }

    Placed placed{begin, begin};
    if (el.name == "par") {
      const std::optional<std::int64_t> own_end = dur ? std::optional<std::int64_t>(begin + *dur) : std::nullopt;
      std::int64_t latest = begin;
      for (const xml::Node* child : el.elements()) {
        latest = std::max(latest, place(*child, begin, own_end).end);
      }
      placed.end = own_end.value_or(latest);
    } else if (el.name == "seq") {
      if (dur) throw Error(ErrorKind::SubsetViolation, "<seq dur> is outside the supported subset");
      std::int64_t cursor = begin;
      for (const xml::Node* child : el.elements()) {
        const bool segment = child->name == "par" && child->attribute("xml:id") != nullptr;
        std::optional<std::size_t> previous = current_segment_;
        if (segment) {
          current_segment_ = graph.segments.size();
          graph.segments.push_back({*child->attribute("xml:id"), cursor, 0});
        }
        const Placed p = place(*child, cursor, std::nullopt);
        if (segment) {
          graph.segments.back().beginMs = p.begin;
          graph.segments.back().durMs = p.end - p.begin;
          current_segment_ = previous;
        }
        cursor = p.end;
      }
      placed.end = cursor;
    } else if (el.name == "audio") {
      const std::string* src = el.attribute("src");
      if (src == nullptr) throw Error(ErrorKind::SubsetViolation, "<audio> without src");
      if (!dur) throw Error(ErrorKind::SubsetViolation, "<audio> without an explicit dur");
      placed.end = clip(begin + *dur, parent_end);
      graph.audios.push_back({*src, begin, placed.end, current_segment_});
    } else if (el.name == "smilText") {
      if (dur) {
        placed.end = clip(begin + *dur, parent_end);
      } else if (parent_end) {
        placed.end = *parent_end;
      } else {
        throw Error(ErrorKind::SubsetViolation, "<smilText> without dur outside a par with explicit dur");
      }
      place_text(el, placed);
    } else if (el.name == "a") {
      const std::string* href = el.attribute("href");
      if (href == nullptr) throw Error(ErrorKind::SubsetViolation, "<a> without href");
      const std::size_t first_text = graph.texts.size();
      std::int64_t latest = begin;
      for (const xml::Node* child : el.elements()) latest = std::max(latest, place(*child, begin, parent_end).end);
      std::string label;
      for (std::size_t i = first_text; i < graph.texts.size(); ++i) label += graph.texts[i].text;
      graph.links.push_back({*href, "", label});
      placed.end = latest;
    }
    return placed;
  }

  void resolve_links() {
    for (auto& link : graph.links) {
      if (link.href.size() < 2 || link.href.front() != '#' || !graph.anchors.contains(link.href.substr(1))) {
        throw Error(ErrorKind::DanglingHref, "href '" + link.href + "' names no xml:id");
      }
      link.target = link.href.substr(1);
    }
  }

 private:
  static std::int64_t clip(std::int64_t end, std::optional<std::int64_t> parent_end) {
    return parent_end ? std::min(end, *parent_end) : end;
  }

  static std::optional<std::int64_t> clock_attr(const xml::Node& el, std::string_view key) {
    const std::string* v = el.attribute(key);
    if (v == nullptr) return std::nullopt;
    return parse_clock(*v);
  }

  void check_region(const xml::Node& el) {
    const std::string* region = el.attribute("region");
    if (region == nullptr) throw Error(ErrorKind::SubsetViolation, "<smilText> without region");
    if (!graph.regions.contains(*region)) {
      throw Error(ErrorKind::UndeclaredRegion, "region '" + *region + "' is not declared");
    }
  }

  static bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

  static void inline_text(const xml::Node& node, std::string& out) {
    for (const auto& child : node.children) {
      if (child.is_text()) {
        out += child.text;
      } else if (child.name == "span") {
        inline_text(child, out);
      } else if (child.name == "br") {
        out += '\n';
      } else {
        throw Error(ErrorKind::UnknownElement, "<" + child.name + "> inside text");
      }
    }
  }

  // Splits a smilText into chunks at each <tev>; each chunk stays visible
  // from its own begin until the smilText ends.
  void place_text(const xml::Node& el, const Placed& span) {
    check_region(el);
    const std::string& region = *el.attribute("region");
    std::int64_t chunk_begin = span.begin;
    std::string chunk;
    bool paragraph_open = false;
    auto flush = [&]() {
      if (!chunk.empty()) {
        graph.texts.push_back({region, std::min(chunk_begin, span.end), span.end, chunk, current_segment_});
      }
      chunk.clear();
      paragraph_open = false;
    };
    for (const auto& child : el.children) {
      if (child.is_text()) {
        if (!blank(child.text)) chunk += child.text;
      } else if (child.name == "tev") {
        flush();
        const auto delta = clock_attr(child, "begin");
        if (!delta) throw Error(ErrorKind::SubsetViolation, "<tev> without begin");
        chunk_begin = span.begin + *delta;
      } else if (child.name == "p") {
        if (paragraph_open) chunk += '\n';
        inline_text(child, chunk);
        paragraph_open = true;
      } else if (child.name == "span") {
        inline_text(child, chunk);
      } else if (child.name == "br") {
        chunk += '\n';
      } else {
        throw Error(ErrorKind::UnknownElement, "<" + child.name + "> inside <smilText>");
      }
    }
    flush();
  }

  std::optional<std::size_t> current_segment_;
};

}  // namespace

TimeGraph parse_smil(std::string_view document) {
  const xml::Node root = xml::parse(document);
  if (root.name != "smil") throw Error(ErrorKind::UnknownElement, "root element <" + root.name + ">");

  Resolver resolver;
  const xml::Node* body = nullptr;
  for (const xml::Node* child : root.elements()) {
    if (child->name == "head") {
      resolver.declare_regions(*child);
    } else if (child->name == "body" && body == nullptr) {
      body = child;
    } else {
      throw Error(ErrorKind::UnknownElement, "<" + child->name + "> under <smil>");
    }
  }
  if (body == nullptr) throw Error(ErrorKind::SubsetViolation, "document has no <body>");

  // <body> behaves as a seq.
  std::int64_t cursor = 0;
  for (const xml::Node* child : body->elements()) cursor = resolver.place(*child, cursor, std::nullopt).end;
  resolver.graph.totalMs = cursor;
  resolver.resolve_links();
  return std::move(resolver.graph);
}

ActiveSet active_at(const TimeGraph& graph, std::int64_t tMs) {
  if (tMs < 0 || tMs >= graph.totalMs) {
    throw Error(ErrorKind::OutOfRange,
                "t=" + std::to_string(tMs) + " outside [0, " + std::to_string(graph.totalMs) + ")");
  }
  ActiveSet out;
  for (const auto& item : graph.texts) {
    if (item.beginMs <= tMs && tMs < item.endMs) out.text[item.region].push_back(item.text);
  }
  for (const auto& item : graph.audios) {
    if (item.beginMs <= tMs && tMs < item.endMs) out.audio.push_back(item.src);
  }
  return out;
}

std::int64_t resolve_link(const TimeGraph& graph, std::string_view fragment) {
  for (const auto& link : graph.links) {
    if (link.href == fragment) return graph.anchors.at(link.target);
  }
  throw Error(ErrorKind::DanglingHref, "no index link '" + std::string(fragment) + "'");
}

std::string event_trace(const TimeGraph& graph) {
  struct Line {
    std::int64_t t;
    int phase;  // 0 = ending, 1 = beginning
    std::size_t order;
    std::string text;
  };
  std::vector<Line> lines;
  auto quoted = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '\n') {
        out += "\\n";
      } else {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
    }
    return out + "\"";
  };
  std::size_t order = 0;
  for (const auto& item : graph.texts) {
    const std::string target = item.region + " " + quoted(item.text);
    lines.push_back({item.beginMs, 1, order, "show " + target});
    lines.push_back({item.endMs, 0, order++, "hide " + target});
  }
  for (const auto& item : graph.audios) {
    lines.push_back({item.beginMs, 1, order, "play " + item.src});
    lines.push_back({item.endMs, 0, order++, "stop " + item.src});
  }
  std::stable_sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.phase != b.phase) return a.phase < b.phase;
    return a.order < b.order;
  });
  std::string out;
  for (const auto& line : lines) out += "t=" + std::to_string(line.t) + " " + line.text + "\n";
  return out;
}

}  // namespace phonlesson
