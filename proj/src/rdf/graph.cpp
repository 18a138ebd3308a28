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
#include <cctype>

#include "odk/rdf.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

bool is_pn_chars_base(unsigned char c) {
  return std::isalpha(c) || c >= 0x80;
}

bool is_pn_chars(unsigned char c) {
  return is_pn_chars_base(c) || c == '_' || c == '-' || std::isdigit(c);
}

// Conservative PN_LOCAL check: no escapes, no percent-encoding, no ':'.
bool is_simple_local_name(std::string_view s) {
  if (s.empty()) return true;
  const auto first = static_cast<unsigned char>(s.front());
  if (!is_pn_chars_base(first) && first != '_' && !std::isdigit(first)) return false;
  if (s.back() == '.') return false;
  for (const char ch : s.substr(1)) {
    const auto c = static_cast<unsigned char>(ch);
    if (!is_pn_chars(c) && c != '.') return false;
  }
  return true;
}

template <class Map>
bool erase_nested(Map& index, const Term& a, const Term& b, const Term& c) {
  auto i = index.find(a);
  if (i == index.end()) return false;
  auto j = i->second.find(b);
  if (j == i->second.end()) return false;
  if (j->second.erase(c) == 0) return false;
  if (j->second.empty()) i->second.erase(j);
  if (i->second.empty()) index.erase(i);
  return true;
}

}  // namespace

PrefixMap PrefixMap::builtin() {
  PrefixMap m;
  m.set("res", std::string(vocab::kRes));
  m.set("pred", std::string(vocab::kPred));
  m.set("class", std::string(vocab::kClass));
  m.set("orkgt", std::string(vocab::kTemplate));
  m.set("rdf", std::string(vocab::kRdf));
  m.set("rdfs", std::string(vocab::kRdfs));
  m.set("xsd", std::string(vocab::kXsd));
  m.set("schema", std::string(vocab::kSchema));
  m.set("qudt", std::string(vocab::kQudt));
  m.set("owl", std::string(vocab::kOwl));
  m.set("dcterms", std::string(vocab::kDcterms));
  m.set("sh", std::string(vocab::kSh));
  return m;
}

void PrefixMap::set(std::string prefix, std::string iri) { map_[std::move(prefix)] = std::move(iri); }

std::optional<std::string> PrefixMap::find(std::string_view prefix) const {
  auto it = map_.find(std::string(prefix));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> PrefixMap::expand(std::string_view curie) const {
  const auto colon = curie.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto ns = find(curie.substr(0, colon));
  if (!ns) return std::nullopt;
  return *ns + std::string(curie.substr(colon + 1));
}

std::optional<std::string> PrefixMap::compact(std::string_view iri) const {
  std::optional<std::string> best;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : map_) {
    if (ns.size() <= best_len || iri.size() < ns.size() || iri.substr(0, ns.size()) != ns)
      continue;
    const auto local = iri.substr(ns.size());
    if (!is_simple_local_name(local)) continue;
    best = prefix + ":" + std::string(local);
    best_len = ns.size();
  }
  return best;
}

std::string PrefixMap::resolve(std::string_view text) const {
  if (text.size() >= 2 && text.front() == '<' && text.back() == '>')
    return std::string(text.substr(1, text.size() - 2));
  if (auto expanded = expand(text)) return *expanded;
  if (is_absolute_iri(text)) return std::string(text);
  throw Error(ErrorCode::UnknownPrefix, "cannot resolve '" + std::string(text) + "'");
}

Graph::Graph() : prefixes_(PrefixMap::builtin()) {}

bool Graph::insert(const Triple& t) {
  auto& objects = spo_[t.subject][t.predicate];
  if (!objects.insert(t.object).second) return false;
  pos_[t.predicate][t.object].insert(t.subject);
  osp_[t.object][t.subject].insert(t.predicate);
  ++size_;
  return true;
}

bool Graph::erase(const Triple& t) {
  if (!erase_nested(spo_, t.subject, t.predicate, t.object)) return false;
  erase_nested(pos_, t.predicate, t.object, t.subject);
  erase_nested(osp_, t.object, t.subject, t.predicate);
  --size_;
  return true;
}

bool Graph::contains(const Triple& t) const {
  auto i = spo_.find(t.subject);
  if (i == spo_.end()) return false;
  auto j = i->second.find(t.predicate);
  return j != i->second.end() && j->second.contains(t.object);
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto emit_subject = [&](const Term& subj, const std::map<Term, std::set<Term>>& by_pred) {
    auto emit_pred = [&](const Term& pr, const std::set<Term>& objs) {
      if (o) {
        if (objs.contains(*o)) out.emplace_back(subj, pr, *o);
      } else {
        for (const auto& ob : objs) out.emplace_back(subj, pr, ob);
      }
    };
    if (p) {
      auto j = by_pred.find(*p);
      if (j != by_pred.end()) emit_pred(j->first, j->second);
    } else {
      for (const auto& [pr, objs] : by_pred) emit_pred(pr, objs);
    }
  };

  if (s) {
    auto i = spo_.find(*s);
    if (i != spo_.end()) emit_subject(i->first, i->second);
    return out;
  }
  if (p) {
    auto i = pos_.find(*p);
    if (i == pos_.end()) return out;
    auto emit_obj = [&](const Term& ob, const std::set<Term>& subjects) {
      for (const auto& subj : subjects) out.emplace_back(subj, i->first, ob);
    };
    if (o) {
      auto j = i->second.find(*o);
      if (j != i->second.end()) emit_obj(j->first, j->second);
      return out;  // single object: subjects already in order
    }
    for (const auto& [ob, subjects] : i->second) emit_obj(ob, subjects);
    std::sort(out.begin(), out.end());
    return out;
  }
  if (o) {
    auto i = osp_.find(*o);
    if (i == osp_.end()) return out;
    for (const auto& [subj, preds] : i->second)
      for (const auto& pr : preds) out.emplace_back(subj, pr, i->first);
    return out;  // (s, p) order with o fixed
  }
  out.reserve(size_);
  for (const auto& [subj, by_pred] : spo_) emit_subject(subj, by_pred);
  return out;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  auto i = spo_.find(s);
  if (i == spo_.end()) return out;
  auto j = i->second.find(p);
  if (j == i->second.end()) return out;
  out.assign(j->second.begin(), j->second.end());
  return out;
}

std::optional<Term> Graph::first_object(const Term& s, const Term& p) const {
  auto i = spo_.find(s);
  if (i == spo_.end()) return std::nullopt;
  auto j = i->second.find(p);
  if (j == i->second.end() || j->second.empty()) return std::nullopt;
  return *j->second.begin();
}

bool Graph::has_type(const Term& s, std::string_view class_iri) const {
  static const Term type = Term::iri(vocab::kRdfType);
  return contains(Triple(s, type, Term::iri(class_iri)));
}

std::uint64_t Graph::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::string_view s) {
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
  };
  for (const auto& t : triples()) {
    mix(t.subject.ntriples());
    mix(" ");
    mix(t.predicate.ntriples());
    mix(" ");
    mix(t.object.ntriples());
    mix(" .\n");
  }
  return h;
}

}  // namespace odk
