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

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "odk/query.hpp"
#include "odk/vocab.hpp"
#include "rdf/escape.hpp"

namespace odk {
namespace {

enum class Tok { End, Var, IriRef, PName, Word, String, Number, Punct };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // var name, IRI, pname, word (uppercased copy in `upper`), string body
  std::string upper;
  std::size_t offset = 0;
};

constexpr std::array<std::string_view, 24> kUnsupported = {
    "OPTIONAL", "UNION",   "MINUS",  "BIND",   "VALUES",   "SERVICE", "GRAPH",  "ORDER",
    "LIMIT",    "OFFSET",  "HAVING", "CONSTRUCT", "ASK",   "DESCRIBE", "COUNT", "SUM",
    "MIN",      "MAX",     "AVG",    "SAMPLE", "EXISTS",   "NOT",     "FROM",   "REDUCED"};

bool is_name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      Token t;
      t.offset = pos_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if ((c == '?' || c == '$') && pos_ + 1 < text_.size() &&
          is_name_char(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        t.kind = Tok::Var;
        t.text = name();
      } else if (c == '<' && try_iriref(t)) {
        t.kind = Tok::IriRef;
      } else if (c == '"' || c == '\'') {
        t.kind = Tok::String;
        t.text = string_body();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 ((c == '.' || c == '-' || c == '+') && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) && !after_operand(out))) {
        t.kind = Tok::Number;
        t.text = number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
                 static_cast<unsigned char>(c) >= 0x80) {
        word_or_pname(t);
      } else {
        t.kind = Tok::Punct;
        static constexpr std::array<std::string_view, 6> kTwo = {"||", "&&", "!=", "<=", ">=", "^^"};
        const auto two = text_.substr(pos_, 2);
        if (std::find(kTwo.begin(), kTwo.end(), two) != kTwo.end()) {
          t.text = std::string(two);
          pos_ += 2;
        } else {
          t.text = std::string(1, c);
          ++pos_;
        }
      }
      t.upper = t.text;
      std::transform(t.upper.begin(), t.upper.end(), t.upper.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
      out.push_back(std::move(t));
    }
  }

  [[noreturn]] void fail(std::string_view msg, std::size_t at) const;

 private:
  // A sign directly after a value is a binary operator, not part of a number.
  static bool after_operand(const std::vector<Token>& out) {
    if (out.empty()) return false;
    const auto& prev = out.back();
    return prev.kind == Tok::Var || prev.kind == Tok::Number || prev.kind == Tok::String ||
           (prev.kind == Tok::Punct && prev.text == ")");
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (is_name_char(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.')) {
      if (text_[pos_] == '.' &&
          (pos_ + 1 >= text_.size() || !is_name_char(static_cast<unsigned char>(text_[pos_ + 1]))))
        break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool try_iriref(Token& t) {
    std::size_t i = pos_ + 1;
    while (i < text_.size()) {
      const char c = text_[i];
      if (c == '>') {
        t.text = std::string(text_.substr(pos_ + 1, i - pos_ - 1));
        pos_ = i + 1;
        return true;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`' || c == '\\')
        return false;
      ++i;
    }
    return false;
  }

  std::string string_body() {
    const std::size_t start = pos_;
    const char quote = text_[pos_];
    const bool long_form = text_.substr(pos_, 3) == std::string(3, quote);
    pos_ += long_form ? 3 : 1;
    std::string out;
    for (;;) {
      if (pos_ >= text_.size()) fail("unterminated string", start);
      const char c = text_[pos_];
      if (long_form && text_.substr(pos_, 3) == std::string(3, quote)) {
        pos_ += 3;
        return out;
      }
      if (!long_form && c == quote) {
        ++pos_;
        return out;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in string", pos_);
      if (c == '\\' && pos_ + 1 < text_.size()) {
        const char e = text_[pos_ + 1];
        pos_ += 2;
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            const std::size_t n = e == 'u' ? 4 : 8;
            char32_t cp = 0;
            for (std::size_t k = 0; k < n; ++k, ++pos_) {
              if (pos_ >= text_.size() || !std::isxdigit(static_cast<unsigned char>(text_[pos_])))
                fail("bad unicode escape", pos_);
              cp = cp * 16 + static_cast<char32_t>(std::stoi(std::string(1, text_[pos_]), nullptr, 16));
            }
            rdf::append_utf8(out, cp);
            break;
          }
          default: fail("invalid escape", pos_ - 1);
        }
        continue;
      }
      out += c;
      ++pos_;
    }
  }

  std::string number() {
    const std::size_t start = pos_;
    if (text_[pos_] == '+' || text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t i = pos_ + 1;
      if (i < text_.size() && (text_[i] == '+' || text_[i] == '-')) ++i;
      if (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        pos_ = i;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void word_or_pname(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (is_name_char(static_cast<unsigned char>(text_[pos_])) ||
                                   (text_[pos_] == '.' && pos_ + 1 < text_.size() &&
                                    is_name_char(static_cast<unsigned char>(text_[pos_ + 1])))))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (is_name_char(static_cast<unsigned char>(c)) || c == ':' || c == '%') {
          ++pos_;
        } else if (c == '.' && pos_ + 1 < text_.size() &&
                   is_name_char(static_cast<unsigned char>(text_[pos_ + 1]))) {
          ++pos_;
        } else {
          break;
        }
      }
      t.kind = Tok::PName;
    } else {
      t.kind = Tok::Word;
    }
    t.text = std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void throw_at(std::string_view text, ErrorCode code, std::string_view msg,
                           std::size_t at) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < at && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw SyntaxError(code, std::string(msg), line, col, at);
}

void Lexer::fail(std::string_view msg, std::size_t at) const {
  throw_at(text_, ErrorCode::Syntax, msg, at);
}

class QueryParser {
 public:
  explicit QueryParser(std::string_view text)
      : text_(text), tokens_(Lexer(text).run()), prefixes_(PrefixMap::builtin()) {}

  QueryAst parse() {
    while (word("PREFIX")) {
      ++pos_;
      const Token& p = cur();
      if (p.kind != Tok::PName || p.text.back() != ':' ||
          p.text.find(':') != p.text.size() - 1)
        fail("expected prefix name like 'ex:'");
      const std::string prefix = p.text.substr(0, p.text.size() - 1);
      ++pos_;
      if (cur().kind != Tok::IriRef) fail("expected namespace IRI");
      prefixes_.set(prefix, cur().text);
      ++pos_;
    }
    check_unsupported();
    if (word("BASE")) unsupported("BASE");
    if (!word("SELECT")) fail("expected SELECT");
    ++pos_;
    if (word("DISTINCT")) {
      ast_.distinct = true;
      ++pos_;
    }
    bool select_all = false;
    if (punct("*")) {
      select_all = true;
      ++pos_;
    } else {
      projection();
    }
    if (word("WHERE")) ++pos_;
    expect("{");
    group_body();
    expect("}");
    if (word("GROUP")) {
      ++pos_;
      if (!word("BY")) fail("expected BY after GROUP");
      ++pos_;
      if (cur().kind != Tok::Var) fail("expected a variable after GROUP BY");
      while (cur().kind == Tok::Var) {
        ast_.group_by.push_back(cur().text);
        ++pos_;
      }
    }
    check_unsupported();
    if (cur().kind != Tok::End) fail("unexpected '" + cur().text + "' after query");
    if (select_all) expand_select_all();
    check_scoping();
    return std::move(ast_);
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  bool word(std::string_view w) const { return cur().kind == Tok::Word && cur().upper == w; }
  bool punct(std::string_view p) const { return cur().kind == Tok::Punct && cur().text == p; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw_at(text_, ErrorCode::Syntax, msg, cur().offset);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw_at(text_, ErrorCode::UnsupportedConstruct, "unsupported construct: " + what,
             cur().offset);
  }

  void check_unsupported() const {
    if (cur().kind != Tok::Word) return;
    if (std::find(kUnsupported.begin(), kUnsupported.end(), cur().upper) != kUnsupported.end())
      unsupported(cur().upper);
  }

  void expect(std::string_view p) {
    if (!punct(p)) {
      check_unsupported();
      fail("expected '" + std::string(p) + "'");
    }
    ++pos_;
  }

  void projection() {
    std::size_t items = 0;
    for (;;) {
      if (cur().kind == Tok::Var) {
        ast_.projection.emplace_back(Variable{cur().text});
        ++pos_;
      } else if (word("GROUP_CONCAT")) {
        ast_.projection.emplace_back(group_concat());
      } else if (punct("(")) {
        ++pos_;
        if (!word("GROUP_CONCAT")) {
          check_unsupported();
          unsupported("projection expression other than GROUP_CONCAT");
        }
        GroupConcat agg = group_concat();
        if (word("AS")) {
          ++pos_;
          if (cur().kind != Tok::Var) fail("expected variable after AS");
          agg.alias = cur().text;
          ++pos_;
        }
        expect(")");
        ast_.projection.emplace_back(std::move(agg));
      } else {
        break;
      }
      ++items;
    }
    if (items == 0) {
      check_unsupported();
      fail("expected a projection");
    }
  }

  GroupConcat group_concat() {
    ++pos_;  // GROUP_CONCAT
    expect("(");
    GroupConcat agg;
    if (word("DISTINCT")) {
      agg.distinct = true;
      ++pos_;
    }
    if (cur().kind != Tok::Var) unsupported("GROUP_CONCAT over an expression");
    agg.variable = cur().text;
    ++pos_;
    if (punct(";")) {
      ++pos_;
      if (!word("SEPARATOR")) fail("expected SEPARATOR");
      ++pos_;
      expect("=");
      if (cur().kind != Tok::String) fail("expected separator string");
      agg.separator = cur().text;
      ++pos_;
    }
    expect(")");
    return agg;
  }

  void group_body() {
    for (;;) {
      if (punct("}")) return;
      if (punct(".")) {
        ++pos_;
        continue;
      }
      if (word("FILTER")) {
        filter();
        continue;
      }
      check_unsupported();
      if (punct("{")) unsupported("nested group pattern");
      triples_block();
    }
  }

  PatternTerm subject_or_object(bool subject) {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Var:
        ++pos_;
        return Variable{t.text};
      case Tok::IriRef:
      case Tok::PName:
        return iri_token();
      case Tok::String:
      case Tok::Number:
        if (subject) fail("a literal cannot be a subject");
        return literal_token();
      case Tok::Word:
        if (!subject && (t.upper == "TRUE" || t.upper == "FALSE")) {
          ++pos_;
          return Term::literal(t.text == "true" || t.upper == "TRUE" ? "true" : "false",
                               vocab::kXsdBoolean);
        }
        check_unsupported();
        fail("unexpected '" + t.text + "'");
      case Tok::Punct:
        if (t.text == "[" || t.text == "(") unsupported("blank node");
        fail("unexpected '" + t.text + "'");
      case Tok::End:
        fail("unexpected end of query");
    }
    fail("unexpected token");
  }

  Term iri_token() {
    const Token& t = cur();
    std::string iri;
    if (t.kind == Tok::IriRef) {
      iri = t.text;
    } else {
      if (t.text.starts_with("_:")) unsupported("blank node");
      auto expanded = prefixes_.expand(t.text);
      if (!expanded)
        throw_at(text_, ErrorCode::UnknownPrefix,
                 "unknown prefix '" + t.text.substr(0, t.text.find(':') + 1) + "'", t.offset);
      iri = *expanded;
    }
    if (!is_absolute_iri(iri)) fail("relative IRI '" + iri + "' is not supported");
    ++pos_;
    try {
      return Term::iri(iri);
    } catch (const Error& e) {
      throw_at(text_, ErrorCode::Syntax, e.what(), t.offset);
    }
  }

  Term literal_token() {
    const Token t = cur();
    ++pos_;
    if (t.kind == Tok::Number) {
      const bool exp = t.text.find_first_of("eE") != std::string::npos;
      const bool dot = t.text.find('.') != std::string::npos;
      return Term::literal(t.text, exp   ? vocab::kXsdDouble
                                   : dot ? vocab::kXsdDecimal
                                         : vocab::kXsdInteger);
    }
    if (punct("@")) {
      ++pos_;
      if (cur().kind != Tok::Word) fail("expected language tag");
      std::string tag = cur().text;
      ++pos_;
      // Subtags lex as a number/word chain: en-US arrives as Word "en-US".
      return Term::lang_literal(t.text, tag);
    }
    if (punct("^^")) {
      ++pos_;
      if (cur().kind != Tok::IriRef && cur().kind != Tok::PName) fail("expected datatype IRI");
      const Term dt = iri_token();
      if (dt.value() == vocab::kRdfLangString) fail("rdf:langString requires a language tag");
      return Term::literal(t.text, dt.value());
    }
    return Term::literal(t.text);
  }

  std::vector<Term> path() {
    std::vector<Term> out;
    for (;;) {
      if (cur().kind == Tok::Word && cur().text == "a") {
        out.push_back(Term::iri(vocab::kRdfType));
        ++pos_;
      } else if (cur().kind == Tok::IriRef || cur().kind == Tok::PName) {
        out.push_back(iri_token());
      } else if (cur().kind == Tok::Var) {
        unsupported("variable predicate");
      } else if (punct("^") || punct("!") || punct("(")) {
        unsupported("property path operator '" + cur().text + "'");
      } else {
        fail("expected a predicate");
      }
      if (punct("*") || punct("+") || punct("?") || punct("|"))
        unsupported("property path operator '" + cur().text + "'");
      if (!punct("/")) return out;
      ++pos_;
    }
  }

  void triples_block() {
    const std::size_t block = ast_.block_count++;
    PatternTerm subject = subject_or_object(true);
    for (;;) {
      auto predicate = path();
      for (;;) {
        PatternTerm object = subject_or_object(false);
        ast_.patterns.push_back({subject, predicate, std::move(object), block});
        if (!punct(",")) break;
        ++pos_;
      }
      if (!punct(";")) break;
      while (punct(";")) ++pos_;
      if (punct(".") || punct("}") || word("FILTER")) break;
    }
    if (punct(".")) ++pos_;
    else if (!punct("}") && !word("FILTER")) {
      check_unsupported();
      fail("expected '.' or '}'");
    }
  }

  void filter() {
    ++pos_;  // FILTER
    if (!punct("(")) unsupported("FILTER without parentheses");
    ++pos_;
    auto cnf = conjunction();
    expect(")");
    for (auto& d : cnf) ast_.filters.push_back(std::move(d));
  }

  // expr := disj (('&&' | AND) disj)* ; disj := atom (('||' | OR) atom)*
  std::vector<FilterExpr> conjunction() {
    std::vector<FilterExpr> out;
    out.push_back(disjunction());
    while (punct("&&") || word("AND")) {
      ++pos_;
      out.push_back(disjunction());
    }
    return out;
  }

  FilterExpr disjunction() {
    FilterExpr out;
    auto add_atom = [&] {
      auto parts = atom();
      if (parts.size() != 1)
        unsupported("conjunction nested inside a disjunction");
      for (auto& c : parts.front().disjuncts) out.disjuncts.push_back(std::move(c));
    };
    add_atom();
    while (punct("||") || word("OR")) {
      ++pos_;
      add_atom();
    }
    return out;
  }

  std::vector<FilterExpr> atom() {
    if (punct("(")) {
      ++pos_;
      auto inner = conjunction();
      expect(")");
      return inner;
    }
    return {FilterExpr{{comparison()}}};
  }

  Comparison comparison() {
    if (punct("!")) unsupported("negation in FILTER");
    if (cur().kind == Tok::Word) {
      check_unsupported();
      unsupported("function call '" + cur().text + "' in FILTER");
    }
    const std::size_t at = pos_;
    const bool var_first = cur().kind == Tok::Var;
    std::string var;
    std::optional<Term> value;
    if (var_first) {
      var = cur().text;
      ++pos_;
    } else {
      value = operand();
    }
    const Token& op_tok = cur();
    CompareOp op;
    if (op_tok.kind != Tok::Punct) fail("expected a comparison operator");
    if (op_tok.text == "=") op = CompareOp::Eq;
    else if (op_tok.text == "!=") op = CompareOp::Ne;
    else if (op_tok.text == "<") op = CompareOp::Lt;
    else if (op_tok.text == "<=") op = CompareOp::Le;
    else if (op_tok.text == ">") op = CompareOp::Gt;
    else if (op_tok.text == ">=") op = CompareOp::Ge;
    else fail("expected a comparison operator");
    ++pos_;
    if (var_first) {
      if (cur().kind == Tok::Var) unsupported("comparison between two variables");
      value = operand();
    } else {
      if (cur().kind != Tok::Var) {
        pos_ = at;
        unsupported("comparison without a variable");
      }
      var = cur().text;
      ++pos_;
      // Normalize `value op ?v` to `?v op' value`.
      switch (op) {
        case CompareOp::Lt: op = CompareOp::Gt; break;
        case CompareOp::Le: op = CompareOp::Ge; break;
        case CompareOp::Gt: op = CompareOp::Lt; break;
        case CompareOp::Ge: op = CompareOp::Le; break;
        default: break;
      }
    }
    return Comparison{var, op, *value};
  }

  Term operand() {
    const Token& t = cur();
    if (t.kind == Tok::IriRef || t.kind == Tok::PName) return iri_token();
    if (t.kind == Tok::String || t.kind == Tok::Number) return literal_token();
    if (t.kind == Tok::Word && (t.upper == "TRUE" || t.upper == "FALSE")) {
      ++pos_;
      return Term::literal(t.upper == "TRUE" ? "true" : "false", vocab::kXsdBoolean);
    }
    if (t.kind == Tok::Word) {
      check_unsupported();
      unsupported("function call '" + t.text + "' in FILTER");
    }
    fail("expected a constant in comparison");
  }

  void expand_select_all() {
    std::vector<std::string> seen;
    auto note = [&](const PatternTerm& t) {
      if (const auto* v = std::get_if<Variable>(&t);
          v && std::find(seen.begin(), seen.end(), v->name) == seen.end())
        seen.push_back(v->name);
    };
    for (const auto& p : ast_.patterns) {
      note(p.subject);
      note(p.object);
    }
    for (auto& name : seen) ast_.projection.emplace_back(Variable{name});
  }

  void check_scoping() const {
    std::set<std::string> in_patterns;
    for (const auto& p : ast_.patterns) {
      if (const auto* v = std::get_if<Variable>(&p.subject)) in_patterns.insert(v->name);
      if (const auto* v = std::get_if<Variable>(&p.object)) in_patterns.insert(v->name);
    }
    auto require = [&](const std::string& name, std::string_view where) {
      if (!in_patterns.contains(name))
        throw Error(ErrorCode::ProjectionMismatch,
                    "?" + name + " in " + std::string(where) + " does not appear in any pattern");
    };
    for (const auto& g : ast_.group_by) require(g, "GROUP BY");
    for (const auto& f : ast_.filters)
      for (const auto& c : f.disjuncts) require(c.variable, "FILTER");
    const bool grouped = ast_.has_aggregate() || !ast_.group_by.empty();
    for (const auto& item : ast_.projection) {
      if (const auto* v = std::get_if<Variable>(&item)) {
        require(v->name, "SELECT");
        if (grouped &&
            std::find(ast_.group_by.begin(), ast_.group_by.end(), v->name) == ast_.group_by.end())
          throw Error(ErrorCode::ProjectionMismatch,
                      "?" + v->name + " is projected but not grouped; add it to GROUP BY");
      } else {
        require(std::get<GroupConcat>(item).variable, "GROUP_CONCAT");
      }
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  PrefixMap prefixes_;
  QueryAst ast_;
};

}  // namespace

std::vector<std::string> QueryAst::columns() const {
  std::vector<std::string> out;
  std::size_t unnamed = 0;
  for (const auto& item : projection) {
    if (const auto* v = std::get_if<Variable>(&item)) {
      out.push_back(v->name);
    } else {
      const auto& agg = std::get<GroupConcat>(item);
      out.push_back(agg.alias ? *agg.alias : "agg" + std::to_string(++unnamed));
    }
  }
  return out;
}

bool QueryAst::has_aggregate() const {
  return std::any_of(projection.begin(), projection.end(),
                     [](const auto& item) { return std::holds_alternative<GroupConcat>(item); });
}

QueryAst parse_query(std::string_view text) { return QueryParser(text).parse(); }

}  // namespace odk
