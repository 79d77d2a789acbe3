#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phonlesson::xml {

using Attributes = std::vector<std::pair<std::string, std::string>>;

// Minimal DOM. Text nodes have an empty name and carry `text`.
struct Node {
  std::string name;
  Attributes attributes;
  std::vector<Node> children;
  std::string text;
  int line = 0;

  bool is_text() const { return name.empty(); }
  const std::string* attribute(std::string_view key) const;
  std::vector<const Node*> elements() const;
};

// Parses a complete document. DOCTYPE declarations are rejected.
// Throws Error(MalformedXml) with line/column on failure.
Node parse(std::string_view document);

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

// Line-oriented pretty printer: two-space indentation, LF line endings,
// attributes written in the order given.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  ~Writer() = default;

  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  void open(std::string_view name, const Attributes& attrs = {});
  void close();
  void empty(std::string_view name, const Attributes& attrs = {});
  // <name attrs>inner</name> on one line; `inner_markup` is written verbatim.
  void inline_element(std::string_view name, const Attributes& attrs, std::string_view inner_markup);
  void raw_line(std::string_view markup);

  static std::string start_tag(std::string_view name, const Attributes& attrs, bool self_closing = false);

 private:
  void indent();

  std::ostream& out_;
  std::vector<std::string> stack_;
};

}  // namespace phonlesson::xml
