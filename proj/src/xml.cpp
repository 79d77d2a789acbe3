#include "phonlesson/xml.hpp"

#include <expat.h>

#include <memory>

#include "phonlesson/error.hpp"

namespace phonlesson::xml {

const std::string* Node::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<const Node*> Node::elements() const {
  std::vector<const Node*> out;
  for (const auto& child : children) {
    if (!child.is_text()) out.push_back(&child);
  }
  return out;
}

namespace {

struct BuildState {
  XML_Parser parser = nullptr;
  Node root;
  std::vector<Node*> stack;
  bool has_root = false;
  std::string failure;
};

void on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<BuildState*>(user);
  Node node;
  node.name = name;
  node.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
  for (int i = 0; atts[i] != nullptr; i += 2) {
    node.attributes.emplace_back(atts[i], atts[i + 1]);
  }
  if (st->stack.empty()) {
    st->root = std::move(node);
    st->has_root = true;
    st->stack.push_back(&st->root);
  } else {
    Node* parent = st->stack.back();
    parent->children.push_back(std::move(node));
    st->stack.push_back(&parent->children.back());
  }
}

void on_end(void* user, const XML_Char*) {
  auto* st = static_cast<BuildState*>(user);
  st->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len) {
  auto* st = static_cast<BuildState*>(user);
  if (st->stack.empty()) return;
  Node* parent = st->stack.back();
  if (!parent->children.empty() && parent->children.back().is_text()) {
    parent->children.back().text.append(s, static_cast<std::size_t>(len));
    return;
  }
  Node text;
  text.text.assign(s, static_cast<std::size_t>(len));
  text.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
  parent->children.push_back(std::move(text));
}

void on_doctype(void* user, const XML_Char*, const XML_Char*, const XML_Char*, int) {
  auto* st = static_cast<BuildState*>(user);
  st->failure = "DOCTYPE declarations are not allowed";
  XML_StopParser(st->parser, XML_FALSE);
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

Node parse(std::string_view document) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error(ErrorKind::Io, "cannot allocate XML parser");

  BuildState st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), on_doctype);

  const auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (!st.failure.empty()) {
    throw Error(ErrorKind::MalformedXml, st.failure);
  }
  if (status != XML_STATUS_OK) {
    throw Error(ErrorKind::MalformedXml,
                std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())) + ", column " +
                    std::to_string(XML_GetCurrentColumnNumber(parser.get())));
  }
  if (!st.has_root) throw Error(ErrorKind::MalformedXml, "no root element");
  return std::move(st.root);
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Writer::start_tag(std::string_view name, const Attributes& attrs, bool self_closing) {
  std::string out = "<";
  out += name;
  for (const auto& [k, v] : attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += escape_attribute(v);
    out += '"';
  }
  out += self_closing ? "/>" : ">";
  return out;
}

void Writer::indent() {
  for (std::size_t i = 0; i < stack_.size(); ++i) out_ << "  ";
}

void Writer::open(std::string_view name, const Attributes& attrs) {
  indent();
  out_ << start_tag(name, attrs) << '\n';
  stack_.emplace_back(name);
}

void Writer::close() {
  const std::string name = std::move(stack_.back());
  stack_.pop_back();
  indent();
  out_ << "</" << name << ">\n";
}

void Writer::empty(std::string_view name, const Attributes& attrs) {
  indent();
  out_ << start_tag(name, attrs, true) << '\n';
}

void Writer::inline_element(std::string_view name, const Attributes& attrs, std::string_view inner_markup) {
  indent();
  out_ << start_tag(name, attrs) << inner_markup << "</" << name << ">\n";
}

void Writer::raw_line(std::string_view markup) {
  indent();
  out_ << markup << '\n';
}

}  // namespace phonlesson::xml
