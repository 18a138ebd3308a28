// Copyright 2026 The ODK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <sstream>

#include "odk/rdf.hpp"
#include "odk/vocab.hpp"
#include "rdf/escape.hpp"

namespace odk {
namespace {

constexpr std::string_view kNoBlankNodes =
    "blank nodes are not supported; every node must be named by an IRI";

bool is_name_start(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_name_char(unsigned char c) {
  return std::isalnum(c) || c >= 0x80 || c == '_' || c == '-';
}

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  Graph parse() {
    skip_ws();
    while (!at_end()) {
      if (peek() == '@') {
        directive_at();
      } else if (keyword_ahead("PREFIX")) {
        pos_ += 6;
        prefix_body(false);
      } else if (keyword_ahead("BASE")) {
        fail(ErrorCode::UnsupportedConstruct, "BASE is not supported; use absolute IRIs");
      } else {
        statement();
      }
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(ErrorCode code, std::string_view message) const { fail_at(code, message, pos_); }

  [[noreturn]] void fail_at(ErrorCode code, std::string_view message, std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(code, std::string(message), line, col, at);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c, std::string_view what) {
    skip_ws();
    if (peek() != c) fail(ErrorCode::Syntax, "expected " + std::string(what));
    ++pos_;
  }

  bool keyword_ahead(std::string_view kw) const {
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    }
    const auto next = static_cast<unsigned char>(peek(kw.size()));
    return !is_name_char(next) && next != ':';
  }

  void directive_at() {
    ++pos_;
    std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    const auto word = text_.substr(start, pos_ - start);
    if (word == "prefix") {
      prefix_body(true);
    } else if (word == "base") {
      fail_at(ErrorCode::UnsupportedConstruct, "@base is not supported; use absolute IRIs", start);
    } else {
      fail_at(ErrorCode::Syntax, "unknown directive '@" + std::string(word) + "'", start);
    }
  }

  void prefix_body(bool needs_dot) {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && peek() != ':' && (is_name_char(static_cast<unsigned char>(peek())) ||
                                          peek() == '.'))
      ++pos_;
    if (peek() != ':') fail(ErrorCode::Syntax, "expected prefix name followed by ':'");
    std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    skip_ws();
    if (peek() != '<') fail(ErrorCode::Syntax, "expected namespace IRI");
    std::string iri = iriref();
    graph_.prefixes().set(std::move(prefix), std::move(iri));
    if (needs_dot) expect('.', "'.' after @prefix");
  }

  void statement() {
    const Term subject = subject_term();
    predicate_object_list(subject);
    expect('.', "'.' at end of statement");
  }

  void reject_blank_node() {
    const char c = peek();
    if (c == '[' || c == '(' || (c == '_' && peek(1) == ':'))
      fail(ErrorCode::BlankNodeRejected, kNoBlankNodes);
  }

  Term subject_term() {
    skip_ws();
    reject_blank_node();
    if (peek() == '"' || peek() == '\'')
      fail(ErrorCode::Syntax, "a literal cannot be a subject");
    return iri_term();
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      skip_ws();
      const Term predicate = verb();
      for (;;) {
        skip_ws();
        Term object = object_term();
        graph_.insert(Triple(subject, predicate, std::move(object)));
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
      }
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        ++pos_;
        skip_ws();
      }
      if (peek() == '.' || peek() == ']' || at_end()) return;
    }
  }

  Term verb() {
    if (peek() == 'a' && !is_name_char(static_cast<unsigned char>(peek(1))) && peek(1) != ':') {
      ++pos_;
      return Term::iri(vocab::kRdfType);
    }
    reject_blank_node();
    return iri_term();
  }

  Term object_term() {
    reject_blank_node();
    const char c = peek();
    if (c == '"' || c == '\'') return literal_term();
    if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
      return numeric_term();
    if (keyword_ahead("TRUE") && peek() == 't') {
      pos_ += 4;
      return Term::literal("true", vocab::kXsdBoolean);
    }
    if (keyword_ahead("FALSE") && peek() == 'f') {
      pos_ += 5;
      return Term::literal("false", vocab::kXsdBoolean);
    }
    return iri_term();
  }

  Term iri_term() {
    const std::size_t start = pos_;
    std::string iri = peek() == '<' ? iriref() : prefixed_name();
    if (!is_absolute_iri(iri))
      fail_at(ErrorCode::Syntax, "relative IRI '" + iri + "' is not supported", start);
    try {
      return Term::iri(iri);
    } catch (const Error& e) {
      fail_at(ErrorCode::Syntax, e.what(), start);
    }
  }

  std::string iriref() {
    ++pos_;  // '<'
    std::string out;
    for (;;) {
      if (at_end()) fail(ErrorCode::Syntax, "unterminated IRI");
      const char c = peek();
      if (c == '>') {
        ++pos_;
        return out;
      }
      if (c == '\\') {
        ++pos_;
        const char kind = peek();
        if (kind != 'u' && kind != 'U') fail(ErrorCode::Syntax, "invalid escape in IRI");
        ++pos_;
        rdf::append_utf8(out, hex_code(kind == 'u' ? 4 : 8));
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`')
        fail(ErrorCode::Syntax, "invalid character in IRI");
      out += c;
      ++pos_;
    }
  }

  char32_t hex_code(int digits) {
    char32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      const char h = peek();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail(ErrorCode::Syntax, "bad hex escape");
      cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(h))
                                               ? h - '0'
                                               : std::tolower(h) - 'a' + 10);
      ++pos_;
    }
    return cp;
  }

  std::string prefixed_name() {
    const std::size_t start = pos_;
    if (peek() != ':' && !is_name_start(static_cast<unsigned char>(peek())))
      fail(ErrorCode::Syntax, "expected an IRI or prefixed name");
    while (!at_end() && peek() != ':' &&
           (is_name_char(static_cast<unsigned char>(peek())) || peek() == '.'))
      ++pos_;
    if (peek() != ':') fail_at(ErrorCode::Syntax, "expected an IRI or prefixed name", start);
    const std::string prefix(text_.substr(start, pos_ - start));
    ++pos_;
    std::string local;
    for (;;) {
      const auto c = static_cast<unsigned char>(peek());
      if (at_end()) break;
      if (is_name_char(c) || c == ':') {
        local += static_cast<char>(c);
        ++pos_;
      } else if (c == '.') {
        const auto next = static_cast<unsigned char>(peek(1));
        if (!(is_name_char(next) || next == ':' || next == '.' || next == '%' || next == '\\'))
          break;
        local += '.';
        ++pos_;
      } else if (c == '%') {
        if (!std::isxdigit(static_cast<unsigned char>(peek(1))) ||
            !std::isxdigit(static_cast<unsigned char>(peek(2))))
          fail(ErrorCode::Syntax, "bad percent escape in local name");
        local += text_.substr(pos_, 3);
        pos_ += 3;
      } else if (c == '\\') {
        const char e = peek(1);
        if (std::string_view("_~.-!$&'()*+,;=/?#@%").find(e) == std::string_view::npos)
          fail(ErrorCode::Syntax, "bad escape in local name");
        local += e;
        pos_ += 2;
      } else {
        break;
      }
    }
    auto ns = graph_.prefixes().find(prefix);
    if (!ns) fail_at(ErrorCode::UnknownPrefix, "unknown prefix '" + prefix + ":'", start);
    return *ns + local;
  }

  Term literal_term() {
    const std::string lexical = string_body();
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
        ++pos_;
      if (pos_ == start) fail(ErrorCode::Syntax, "empty language tag");
      return Term::lang_literal(lexical, text_.substr(start, pos_ - start));
    }
    if (peek() == '^' && peek(1) == '^') {
      pos_ += 2;
      const Term dt = iri_term();
      if (dt.value() == vocab::kRdfLangString)
        fail(ErrorCode::Syntax, "rdf:langString requires a language tag");
      return Term::literal(lexical, dt.value());
    }
    return Term::literal(lexical);
  }

  std::string string_body() {
    const char quote = peek();
    const bool long_form = peek(1) == quote && peek(2) == quote;
    pos_ += long_form ? 3 : 1;
    std::string out;
    for (;;) {
      if (at_end()) fail(ErrorCode::Syntax, "unterminated string");
      const char c = peek();
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote && peek(3) != quote) {
          pos_ += 3;
          return out;
        }
      } else {
        if (c == quote) {
          ++pos_;
          return out;
        }
        if (c == '\n' || c == '\r') fail(ErrorCode::Syntax, "newline in short string");
      }
      if (c == '\\') {
        ++pos_;
        const char e = peek();
        ++pos_;
        switch (e) {
          case 't': out += '\t'; break;
          case 'b': out += '\b'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u': rdf::append_utf8(out, hex_code(4)); break;
          case 'U': rdf::append_utf8(out, hex_code(8)); break;
          default: fail(ErrorCode::Syntax, "invalid string escape");
        }
        continue;
      }
      out += c;
      ++pos_;
    }
  }

  Term numeric_term() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    std::size_t int_digits = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      ++pos_;
      ++int_digits;
    }
    bool decimal = false;
    std::size_t frac_digits = 0;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      decimal = true;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        ++pos_;
        ++frac_digits;
      }
    }
    bool exponent = false;
    if ((peek() == 'e' || peek() == 'E') && int_digits + frac_digits > 0) {
      exponent = true;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        fail(ErrorCode::Syntax, "malformed exponent");
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (int_digits + frac_digits == 0) fail_at(ErrorCode::Syntax, "malformed number", start);
    const auto lex = text_.substr(start, pos_ - start);
    if (exponent) return Term::literal(lex, vocab::kXsdDouble);
    if (decimal) return Term::literal(lex, vocab::kXsdDecimal);
    return Term::literal(lex, vocab::kXsdInteger);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Graph graph_;
};

class TurtleWriter {
 public:
  explicit TurtleWriter(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  void prefixes(std::ostringstream& out) const {
    for (const auto& [prefix, iri] : prefixes_.entries())
      out << "@prefix " << prefix << ": <" << iri << "> .\n";
  }

  void statements(std::ostringstream& out, const std::vector<Triple>& sorted) const {
    std::size_t i = 0;
    while (i < sorted.size()) {
      const Term& subject = sorted[i].subject;
      out << "\n" << iri(subject);
      bool first_pred = true;
      while (i < sorted.size() && sorted[i].subject == subject) {
        const Term& predicate = sorted[i].predicate;
        out << (first_pred ? " " : " ;\n    ");
        first_pred = false;
        out << (predicate.value() == vocab::kRdfType ? std::string("a") : iri(predicate));
        bool first_obj = true;
        while (i < sorted.size() && sorted[i].subject == subject &&
               sorted[i].predicate == predicate) {
          out << (first_obj ? " " : ", ") << term(sorted[i].object);
          first_obj = false;
          ++i;
        }
      }
      out << " .\n";
    }
  }

 private:
  std::string iri(const Term& t) const {
    if (auto curie = prefixes_.compact(t.value())) return *curie;
    return "<" + t.value() + ">";
  }

  std::string term(const Term& t) const {
    if (t.is_iri()) return iri(t);
    std::string out = "\"" + rdf::escape_string(t.value()) + "\"";
    if (!t.language().empty()) return out + "@" + t.language();
    if (t.datatype() == vocab::kXsdString) return out;
    return out + "^^" + iri(Term::iri(t.datatype()));
  }

  const PrefixMap& prefixes_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleParser(text).parse(); }

std::string serialize_turtle(const Graph& graph) {
  std::ostringstream out;
  TurtleWriter writer(graph.prefixes());
  writer.prefixes(out);
  writer.statements(out, graph.triples());
  return out.str();
}

std::string serialize_turtle_sections(const Graph& graph,
                                      const std::function<bool(const Triple&)>& in_header,
                                      std::string_view header_title,
                                      std::string_view body_title) {
  std::vector<Triple> header;
  std::vector<Triple> body;
  for (auto& t : graph.triples()) (in_header(t) ? header : body).push_back(std::move(t));
  std::ostringstream out;
  TurtleWriter writer(graph.prefixes());
  writer.prefixes(out);
  out << "\n# " << header_title << "\n";
  writer.statements(out, header);
  out << "\n# " << body_title << "\n";
  writer.statements(out, body);
  return out.str();
}

}  // namespace odk
