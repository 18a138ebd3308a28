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
#include <charconv>
#include <cmath>
#include <sstream>

#include "odk/rdf.hpp"
#include "odk/vocab.hpp"
#include "rdf/escape.hpp"

namespace odk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnknownPrefix: return "UnknownPrefix";
    case ErrorCode::BlankNodeRejected: return "BlankNodeRejected";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::ProjectionMismatch: return "ProjectionMismatch";
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::DanglingTemplate: return "DanglingTemplate";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::TypeViolation: return "TypeViolation";
    case ErrorCode::AlreadyPublished: return "AlreadyPublished";
    case ErrorCode::ImmutablePublished: return "ImmutablePublished";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(ErrorCode code, const std::string& message, std::size_t line,
                         std::size_t column, std::size_t offset)
    : Error(code, message + " at line " + std::to_string(line) + ", column " +
                      std::to_string(column)),
      line_(line),
      column_(column),
      offset_(offset),
      detail_(message) {}

struct Term::Rep {
  Kind kind;
  std::string value;
  std::string datatype;
  std::string language;
  std::string nt;
};

bool is_absolute_iri(std::string_view text) noexcept {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  for (std::size_t i = 1; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
      return false;
  }
  return false;
}

Term Term::iri(std::string_view iri) {
  if (!is_absolute_iri(iri))
    throw Error(ErrorCode::InvalidArgument, "not an absolute IRI: '" + std::string(iri) + "'");
  for (const char c : iri) {
    if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\')
      throw Error(ErrorCode::InvalidArgument,
                  "IRI contains a forbidden character: '" + std::string(iri) + "'");
  }
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Iri;
  rep->value = std::string(iri);
  rep->nt = "<" + rep->value + ">";
  return Term(std::move(rep));
}

Term Term::literal(std::string_view lexical) { return literal(lexical, vocab::kXsdString); }

Term Term::literal(std::string_view lexical, std::string_view datatype) {
  if (datatype.empty()) return literal(lexical);
  if (datatype == vocab::kRdfLangString)
    throw Error(ErrorCode::InvalidArgument, "rdf:langString literal requires a language tag");
  if (!is_absolute_iri(datatype))
    throw Error(ErrorCode::InvalidArgument,
                "datatype is not an absolute IRI: '" + std::string(datatype) + "'");
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Literal;
  rep->value = std::string(lexical);
  rep->datatype = std::string(datatype);
  rep->nt = "\"" + rdf::escape_string(lexical) + "\"";
  if (datatype != vocab::kXsdString) rep->nt += "^^<" + rep->datatype + ">";
  return Term(std::move(rep));
}

Term Term::lang_literal(std::string_view lexical, std::string_view language) {
  if (language.empty()) return literal(lexical);
  auto rep = std::make_shared<Rep>();
  rep->kind = Kind::Literal;
  rep->value = std::string(lexical);
  rep->datatype = vocab::kRdfLangString;
  rep->language = std::string(language);
  // Language tags compare case-insensitively; store them lowercased.
  std::transform(rep->language.begin(), rep->language.end(), rep->language.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  rep->nt = "\"" + rdf::escape_string(lexical) + "\"@" + rep->language;
  return Term(std::move(rep));
}

Term Term::integer(long long value) { return literal(std::to_string(value), vocab::kXsdInteger); }

Term Term::decimal(double value) { return literal(format_decimal(value), vocab::kXsdDecimal); }

Term::Kind Term::kind() const noexcept { return rep_->kind; }
const std::string& Term::value() const noexcept { return rep_->value; }
const std::string& Term::datatype() const noexcept { return rep_->datatype; }
const std::string& Term::language() const noexcept { return rep_->language; }
const std::string& Term::ntriples() const noexcept { return rep_->nt; }

std::string format_decimal(double value) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, "decimal value must be finite");
  std::array<char, 512> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
  std::string out(buf.data(), res.ptr);
  if (out == "-0") out = "0";
  return out;
}

std::optional<double> numeric_value(const Term& term) {
  if (!term.is_literal()) return std::nullopt;
  static const std::array<std::string, 16> kNumeric = {
      vocab::kXsdInteger,     vocab::kXsdDecimal,        vocab::kXsdDouble,
      vocab::xsd("float"),    vocab::xsd("int"),         vocab::xsd("long"),
      vocab::xsd("short"),    vocab::xsd("byte"),        vocab::xsd("nonNegativeInteger"),
      vocab::xsd("positiveInteger"), vocab::xsd("negativeInteger"),
      vocab::xsd("nonPositiveInteger"), vocab::xsd("unsignedInt"), vocab::xsd("unsignedLong"),
      vocab::xsd("unsignedShort"), vocab::xsd("unsignedByte")};
  if (std::find(kNumeric.begin(), kNumeric.end(), term.datatype()) == kNumeric.end())
    return std::nullopt;
  const std::string& lex = term.value();
  if (lex.empty()) return std::nullopt;
  std::istringstream in(lex);
  in.imbue(std::locale::classic());
  double v = 0;
  in >> v;
  if (in.fail() || !in.eof()) {
    if (lex == "INF" || lex == "+INF") return HUGE_VAL;
    if (lex == "-INF") return -HUGE_VAL;
    return std::nullopt;
  }
  return v;
}

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (!subject.is_iri())
    throw Error(ErrorCode::InvalidArgument, "triple subject must be an IRI: " + subject.ntriples());
  if (!predicate.is_iri())
    throw Error(ErrorCode::InvalidArgument,
                "triple predicate must be an IRI: " + predicate.ntriples());
}

}  // namespace odk
