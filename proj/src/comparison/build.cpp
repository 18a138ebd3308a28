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
#include <map>

#include "odk/comparison.hpp"
#include "odk/ingest.hpp"
#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

using namespace vocab;

Term iri(std::string_view v) { return Term::iri(v); }

// Orders R2 before R10.
bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    return i;
  };
  const auto ia = split(a);
  const auto ib = split(b);
  if (ia < a.size() && ib < b.size() && a.compare(0, ia, b, 0, ib) == 0) {
    const auto da = a.substr(ia);
    const auto db = b.substr(ib);
    if (da.size() != db.size()) return da.size() < db.size();
    return da < db;
  }
  return a < b;
}

std::string display_name(const Graph& g, const Term& t) {
  if (t.is_literal()) return t.value();
  if (auto label = g.first_object(t, iri(kRdfsLabel))) return label->value();
  if (auto c = PrefixMap::builtin().compact(t.value())) return *c;
  return t.value();
}

std::string property_label(const Graph& g, const std::string& property) {
  if (auto label = g.first_object(iri(property), iri(kRdfsLabel))) return label->value();
  for (const auto& tmpl : TemplateRegistry::builtin().all())
    if (const auto* shape = tmpl.find_shape(property)) return shape->label;
  if (auto c = PrefixMap::builtin().compact(property)) return *c;
  return property;
}

CellValue render_cell(const Graph& g, const Term& property, const Term& object) {
  CellValue cell;
  cell.node = object.ntriples();
  cell.property = property.value();
  const bool leaderboard = object.is_iri() && g.has_type(object, kLeaderboard);
  const bool result = object.is_iri() && g.has_type(object, kDataCentricResult);
  if (leaderboard || result) {
    std::string label;
    if (leaderboard) {
      if (auto m = g.first_object(object, iri(kModelName))) label = m->value();
    } else {
      std::vector<std::string> items;
      for (const auto& item : g.objects(object, iri(kHasEvaluationItem)))
        items.push_back(display_name(g, item));
      std::sort(items.begin(), items.end());
      for (const auto& item : items) label += (label.empty() ? "" : ", ") + item;
    }
    if (label.empty()) label = display_name(g, object);
    std::string score;
    if (auto s = g.first_object(object, iri(kNumericValue))) {
      score = s->value();
      cell.number = numeric_value(*s);
    }
    if (auto m = g.first_object(object, iri(kHasQuantityKind))) cell.metric = display_name(g, *m);
    cell.text = render_compound(label, score, cell.metric);
    return cell;
  }
  cell.text = display_name(g, object);
  if (object.is_literal()) cell.number = numeric_value(object);
  return cell;
}

}  // namespace

std::size_t ComparisonRow::coverage() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.empty(); }));
}

std::string render_compound(std::string_view label, std::string_view score,
                            std::string_view metric) {
  std::string out(label);
  out += ": ";
  out += score;
  if (!metric.empty()) {
    out += " (";
    out += metric;
    out += ')';
  }
  return out;
}

ComparisonTable build_comparison(const Graph& g, const Term& root) {
  if (!root.is_iri() || !g.has_subject(root))
    throw Error(ErrorCode::NotFound, "comparison " + root.value() + " not found");
  auto members = g.objects(root, iri(kCompareContribution));
  if (members.empty())
    throw Error(ErrorCode::InvalidArgument,
                root.value() + " has no pred:compareContribution links");
  std::sort(members.begin(), members.end(),
            [](const Term& a, const Term& b) { return natural_less(a.value(), b.value()); });

  ComparisonTable table;
  table.id = root.value();
  if (auto label = g.first_object(root, iri(kRdfsLabel))) table.label = label->value();
  if (auto pub = publication_of(g, root)) {
    table.provenance = pub->provenance;
    table.persistent_id = pub->persistent_id;
  }

  for (const auto& m : members) {
    if (!m.is_iri() || !g.has_type(m, kDataset))
      throw Error(ErrorCode::TypeViolation, m.value() + " is not typed class:Dataset");
    ComparisonColumn col;
    col.contribution = m.value();
    col.label = display_name(g, m);
    const auto papers = g.match({}, iri(kHasContribution), m);
    if (!papers.empty()) {
      const Term& paper = papers.front().subject;
      if (auto t = g.first_object(paper, iri(kRdfsLabel))) col.paper_title = t->value();
      if (auto y = g.first_object(paper, iri(kPublicationYear)))
        if (auto v = numeric_value(*y)) col.year = static_cast<int>(*v);
    }
    table.columns.push_back(std::move(col));
  }

  const SameAsClosure closure(g);
  std::map<std::string, ComparisonRow> rows;  // keyed by representative
  for (std::size_t c = 0; c < members.size(); ++c) {
    for (const auto& t : g.match(members[c], {}, {})) {
      const auto& p = t.predicate.value();
      if (p == kRdfType || p == kRdfsLabel) continue;
      const auto& rep = closure.representative(t.predicate).value();
      auto& row = rows[rep];
      if (row.cells.empty()) {
        row.property = rep;
        row.cells.resize(members.size());
      }
      if (std::find(row.members.begin(), row.members.end(), p) == row.members.end())
        row.members.push_back(p);
      row.cells[c].push_back(render_cell(g, t.predicate, t.object));
    }
  }

  for (auto& [rep, row] : rows) {
    row.label = property_label(g, rep);
    std::sort(row.members.begin(), row.members.end());
    for (auto& cell : row.cells)
      std::sort(cell.begin(), cell.end(), [](const CellValue& a, const CellValue& b) {
        return std::tie(a.text, a.node, a.property) < std::tie(b.text, b.node, b.property);
      });
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ComparisonRow& a, const ComparisonRow& b) {
                     const auto ca = a.coverage();
                     const auto cb = b.coverage();
                     if (ca != cb) return ca > cb;
                     return std::tie(a.label, a.property) < std::tie(b.label, b.property);
                   });
  return table;
}

}  // namespace odk
