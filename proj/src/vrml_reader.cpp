#include <cctype>

#include "virtlab/error.hpp"
#include "virtlab/export.hpp"

namespace virtlab {

namespace {

struct Token {
  enum Type { word, string, open_brace, close_brace, open_bracket, close_bracket, end } type = end;
  std::string text;
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text, std::size_t start, int line) : s_(text), pos_(start), line_(line) {}

  Token next() {
    skip();
    Token t;
    t.line = line_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    switch (c) {
      case '{': ++pos_; t.type = Token::open_brace; return t;
      case '}': ++pos_; t.type = Token::close_brace; return t;
      case '[': ++pos_; t.type = Token::open_bracket; return t;
      case ']': ++pos_; t.type = Token::close_bracket; return t;
      case '"': t.type = Token::string; t.text = quoted(); return t;
      default: break;
    }
    t.type = Token::word;
    while (pos_ < s_.size()) {
      const char d = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == ',' || d == '{' || d == '}' || d == '[' || d == ']' ||
          d == '"' || d == '#')
        break;
      t.text += d;
      ++pos_;
    }
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string quoted() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      if (s_[pos_] == '\n') ++line_;
      out += s_[pos_++];
    }
    if (pos_ >= s_.size()) throw Error(ErrorCode::parse_error, "unterminated string at line " + std::to_string(line_));
    ++pos_;
    return out;
  }

  const std::string& s_;
  std::size_t pos_;
  int line_;
};

bool is_scalar_word(const std::string& w) {
  if (w == "TRUE" || w == "FALSE" || w == "NULL") return true;
  const char c = w.empty() ? '\0' : w[0];
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
}

bool is_identifier(const std::string& w) {
  return !w.empty() && (std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_') && !is_scalar_word(w);
}

class Parser {
 public:
  Parser(const std::string& text, std::size_t start, VrmlSummary& out) : lex_(text, start, 2), out_(out) {
    advance();
    advance();
  }

  void document() {
    while (cur_.type != Token::end) statement();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, what + " at line " + std::to_string(cur_.line));
  }

  void advance() {
    cur_ = peek_;
    peek_ = lex_.next();
  }

  std::string expect_word() {
    if (cur_.type != Token::word) fail("expected a name");
    std::string w = cur_.text;
    advance();
    return w;
  }

  void expect(Token::Type t, const char* what) {
    if (cur_.type != t) fail(std::string("expected ") + what);
    advance();
  }

  void statement() {
    if (cur_.type != Token::word) fail("expected a statement");
    if (cur_.text == "ROUTE") {
      route();
    } else if (cur_.text == "PROTO" || cur_.text == "EXTERNPROTO") {
      fail("prototypes are not supported");
    } else {
      node_statement();
    }
  }

  void route() {
    advance();
    const std::string from = expect_word();
    if (cur_.type != Token::word || cur_.text != "TO") fail("expected TO in ROUTE");
    advance();
    const std::string to = expect_word();
    if (from.find('.') == std::string::npos || to.find('.') == std::string::npos) fail("malformed ROUTE");
    out_.routes.emplace_back(from, to);
  }

  void node_statement() {
    if (cur_.type == Token::word && cur_.text == "DEF") {
      advance();
      const std::string name = expect_word();
      if (!is_identifier(name)) fail("bad DEF name");
      out_.def_names.push_back(name);
      node();
    } else if (cur_.type == Token::word && cur_.text == "USE") {
      advance();
      expect_word();
    } else {
      node();
    }
  }

  void node() {
    const std::string type = expect_word();
    if (!is_identifier(type)) fail("expected a node type, got '" + type + "'");
    expect(Token::open_brace, "'{'");
    ++out_.node_counts[type];
    ++out_.node_total;
    while (cur_.type != Token::close_brace) {
      if (cur_.type == Token::end) fail("unexpected end of document inside " + type);
      if (cur_.type == Token::word && cur_.text == "ROUTE") {
        route();
        continue;
      }
      const std::string field = expect_word();
      if (!is_identifier(field)) fail("expected a field name, got '" + field + "'");
      value();
    }
    advance();
  }

  bool starts_node() const {
    return cur_.type == Token::word &&
           (cur_.text == "DEF" || cur_.text == "USE" || (is_identifier(cur_.text) && peek_.type == Token::open_brace));
  }

  void value() {
    if (cur_.type == Token::open_bracket) {
      advance();
      while (cur_.type != Token::close_bracket) {
        if (cur_.type == Token::end) fail("unterminated list");
        if (starts_node()) {
          node_statement();
        } else if (cur_.type == Token::string || (cur_.type == Token::word && is_scalar_word(cur_.text))) {
          advance();
        } else {
          fail("unexpected token in list");
        }
      }
      advance();
      return;
    }
    if (starts_node()) {
      node_statement();
      return;
    }
    int n = 0;
    while (cur_.type == Token::string || (cur_.type == Token::word && is_scalar_word(cur_.text))) {
      advance();
      ++n;
    }
    if (n == 0) fail("missing field value");
  }

  Lexer lex_;
  VrmlSummary& out_;
  Token cur_;
  Token peek_;
};

}  // namespace

VrmlSummary read_vrml(const std::string& text) {
  VrmlSummary out;
  const std::size_t eol = text.find('\n');
  out.header = text.substr(0, eol);
  if (out.header.rfind("#VRML V2.0", 0) != 0) throw Error(ErrorCode::parse_error, "missing VRML V2.0 header");
  Parser p(text, eol == std::string::npos ? text.size() : eol + 1, out);
  p.document();
  return out;
}

}  // namespace virtlab
