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

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "odk/error.hpp"

namespace odk {

/// An RDF term: an absolute IRI or a typed literal. There are no blank nodes.
///
/// Terms are immutable and cheap to copy. Ordering and equality follow the
/// N-Triples serialization of the term, so a plain literal and the same
/// lexical form typed xsd:string are the same term.
class Term {
 public:
  enum class Kind { Iri, Literal };

  /// Throws Error(InvalidArgument) unless `iri` has a scheme.
  static Term iri(std::string_view iri);
  static Term literal(std::string_view lexical);
  static Term literal(std::string_view lexical, std::string_view datatype);
  static Term lang_literal(std::string_view lexical, std::string_view language);
  static Term integer(long long value);
  static Term decimal(double value);

  Kind kind() const noexcept;
  bool is_iri() const noexcept { return kind() == Kind::Iri; }
  bool is_literal() const noexcept { return kind() == Kind::Literal; }

  /// IRI string for IRIs, lexical form for literals.
  const std::string& value() const noexcept;
  /// Empty for IRIs.
  const std::string& datatype() const noexcept;
  /// Empty unless the datatype is rdf:langString.
  const std::string& language() const noexcept;

  /// Canonical N-Triples form, e.g. `<https://x/a>` or `"5"^^<...#integer>`.
  const std::string& ntriples() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return a.rep_ == b.rep_ || a.ntriples() == b.ntriples();
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    return a.ntriples().compare(b.ntriples()) <=> 0;
  }

 private:
  struct Rep;
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

bool is_absolute_iri(std::string_view text) noexcept;

/// Numeric value of an xsd numeric literal (integer family, decimal, double,
/// float); nullopt for anything else or an unparsable lexical form.
std::optional<double> numeric_value(const Term& term);

/// Shortest decimal rendering without exponent, used for xsd:decimal.
std::string format_decimal(double value);

struct Triple {
  /// Throws Error(InvalidArgument) when subject or predicate is a literal.
  Triple(Term s, Term p, Term o);

  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Prefix to namespace-IRI map used for CURIE expansion and compaction.
class PrefixMap {
 public:
  /// The built-in map: res, pred, class, orkgt, rdf, rdfs, xsd, schema, qudt,
  /// plus owl, dcterms and sh.
  static PrefixMap builtin();

  void set(std::string prefix, std::string iri);
  std::optional<std::string> find(std::string_view prefix) const;
  /// `pfx:local` to a full IRI; nullopt when the prefix is unknown.
  std::optional<std::string> expand(std::string_view curie) const;
  /// Best `pfx:local` form of `iri` (longest namespace whose remainder is a
  /// valid Turtle local name), or nullopt.
  std::optional<std::string> compact(std::string_view iri) const;
  /// Accepts `<iri>`, an absolute IRI, or a CURIE over this map.
  std::string resolve(std::string_view text) const;

  const std::map<std::string, std::string>& entries() const noexcept { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

/// A set of triples with SPO/POS/OSP indexes. Value type: copies are
/// independent snapshots.
class Graph {
 public:
  Graph();

  /// Returns true when the triple was not already present.
  bool insert(const Triple& triple);
  bool erase(const Triple& triple);
  bool contains(const Triple& triple) const;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// All triples matching the concrete positions, ordered by
  /// (subject, predicate, object).
  std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                            const std::optional<Term>& o) const;
  std::vector<Triple> triples() const { return match({}, {}, {}); }

  /// Objects of (s, p, *) in term order.
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::optional<Term> first_object(const Term& s, const Term& p) const;
  bool has_subject(const Term& s) const { return spo_.contains(s); }
  bool has_type(const Term& s, std::string_view class_iri) const;

  const PrefixMap& prefixes() const noexcept { return prefixes_; }
  PrefixMap& prefixes() noexcept { return prefixes_; }

  /// FNV-1a over the canonical N-Triples dump.
  std::uint64_t fingerprint() const;

  /// Triple-set equality; prefix maps are ignored.
  friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

 private:
  using Index = std::map<Term, std::map<Term, std::set<Term>>>;
  Index spo_;
  Index pos_;
  Index osp_;
  std::size_t size_ = 0;
  PrefixMap prefixes_;
};

/// Parses Turtle into a graph seeded with the built-in prefix map. Blank
/// nodes (`[ ]`, `_:x`, collections) are rejected with BlankNodeRejected.
Graph parse_turtle(std::string_view text);

/// Deterministic Turtle: prefixes sorted, then subjects, predicates and
/// objects in term order.
std::string serialize_turtle(const Graph& graph);

/// Same as serialize_turtle but triples selected by `in_header` come first
/// under their own comment banner. Both blocks parse as one document.
std::string serialize_turtle_sections(const Graph& graph,
                                      const std::function<bool(const Triple&)>& in_header,
                                      std::string_view header_title,
                                      std::string_view body_title);

}  // namespace odk
