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

#include <nlohmann/json.hpp>

#include "odk/comparison.hpp"
#include "odk/query.hpp"
#include "odk/vocab.hpp"
#include "rdf/escape.hpp"

namespace odk {
namespace {

using json = nlohmann::ordered_json;

std::string joined(const std::vector<CellValue>& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += "; ";
    out += v.text;
  }
  return out;
}

std::string to_csv(const ComparisonTable& t) {
  std::string out = "property";
  for (const auto& c : t.columns) out += "," + csv_field(c.label);
  out += "\r\n";
  for (const auto& r : t.rows) {
    out += csv_field(r.label);
    for (const auto& cell : r.cells) out += "," + csv_field(joined(cell));
    out += "\r\n";
  }
  return out;
}

json to_json(const ComparisonTable& t) {
  json j;
  j["id"] = t.id;
  j["label"] = t.label;
  j["columns"] = json::array();
  for (const auto& c : t.columns) {
    json col;
    col["contribution"] = c.contribution;
    col["label"] = c.label;
    col["paper_title"] = c.paper_title;
    col["year"] = c.year ? json(*c.year) : json(nullptr);
    j["columns"].push_back(std::move(col));
  }
  j["rows"] = json::array();
  for (const auto& r : t.rows) {
    json row;
    row["property"] = r.property;
    row["label"] = r.label;
    row["members"] = r.members;
    row["cells"] = json::array();
    for (const auto& cell : r.cells) {
      json values = json::array();
      for (const auto& v : cell) {
        json value;
        value["text"] = v.text;
        value["node"] = v.node;
        value["property"] = v.property;
        value["number"] = v.number ? json(*v.number) : json(nullptr);
        value["metric"] = v.metric;
        values.push_back(std::move(value));
      }
      row["cells"].push_back(std::move(values));
    }
    j["rows"].push_back(std::move(row));
  }
  if (t.provenance) {
    j["provenance"] = {{"created_at", t.provenance->created_at},
                       {"created_by", t.provenance->created_by},
                       {"license", t.provenance->license}};
  } else {
    j["provenance"] = nullptr;
  }
  j["persistent_id"] = t.persistent_id ? json(*t.persistent_id) : json(nullptr);
  j["warnings"] = t.warnings;
  return j;
}

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_html(const ComparisonTable& t) {
  const std::string title = html_escape(t.label.empty() ? t.id : t.label);
  std::string out =
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" + title +
      "</title>\n</head>\n<body>\n<h1>" + title + "</h1>\n";
  if (t.persistent_id) out += "<p>Identifier: " + html_escape(*t.persistent_id) + "</p>\n";
  if (t.provenance)
    out += "<p>Created " + html_escape(t.provenance->created_at) + " by " +
           html_escape(t.provenance->created_by) + ", license <a href=\"" +
           html_escape(t.provenance->license) + "\">" + html_escape(t.provenance->license) +
           "</a></p>\n";
  out += "<table>\n<thead>\n<tr><th>Property</th>";
  for (const auto& c : t.columns) {
    out += "<th title=\"" + html_escape(c.contribution) + "\">" + html_escape(c.label);
    if (!c.paper_title.empty() || c.year) {
      out += "<br><small>" + html_escape(c.paper_title);
      if (c.year) out += " (" + std::to_string(*c.year) + ")";
      out += "</small>";
    }
    out += "</th>";
  }
  out += "</tr>\n</thead>\n<tbody>\n";
  for (const auto& r : t.rows) {
    out += "<tr><th title=\"" + html_escape(r.property) + "\">" + html_escape(r.label) + "</th>";
    for (const auto& cell : r.cells) {
      out += "<td>";
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (i) out += "<br>";
        out += html_escape(cell[i].text);
      }
      out += "</td>";
    }
    out += "</tr>\n";
  }
  out += "</tbody>\n</table>\n</body>\n</html>\n";
  return out;
}

std::string iri_nt(std::string_view iri) { return "<" + std::string(iri) + ">"; }

std::string literal_nt(std::string_view lex) {
  return "\"" + rdf::escape_string(lex) + "\"";
}

// The table's own nodes are already N-Triples terms, so the subgraph is
// assembled as an N-Triples document and parsed back.
std::string to_turtle(const ComparisonTable& t) {
  using namespace vocab;
  std::string nt;
  auto line = [&](std::string_view s, std::string_view p, std::string_view o) {
    nt += iri_nt(s) + " " + iri_nt(p) + " " + std::string(o) + " .\n";
  };
  line(t.id, kRdfType, iri_nt(kComparison));
  if (!t.label.empty()) line(t.id, kRdfsLabel, literal_nt(t.label));
  for (const auto& c : t.columns) {
    line(t.id, kCompareContribution, iri_nt(c.contribution));
    if (!c.label.empty()) line(c.contribution, kRdfsLabel, literal_nt(c.label));
  }
  for (const auto& r : t.rows)
    for (std::size_t c = 0; c < r.cells.size() && c < t.columns.size(); ++c)
      for (const auto& v : r.cells[c]) line(t.columns[c].contribution, v.property, v.node);
  if (t.provenance) {
    line(t.id, kCreated, literal_nt(t.provenance->created_at) + "^^" + iri_nt(kXsdDateTime));
    line(t.id, kCreator, literal_nt(t.provenance->created_by));
    line(t.id, kLicense, iri_nt(t.provenance->license));
  }
  if (t.persistent_id) line(t.id, kIdentifier, literal_nt(*t.persistent_id));
  const Graph g = parse_turtle(nt);
  return serialize_turtle_sections(g, is_metadata_triple, "metadata", "data");
}

}  // namespace

ExportFormat parse_export_format(std::string_view name) {
  if (name == "csv") return ExportFormat::Csv;
  if (name == "json") return ExportFormat::Json;
  if (name == "html") return ExportFormat::Html;
  if (name == "ttl" || name == "turtle") return ExportFormat::Turtle;
  throw Error(ErrorCode::InvalidArgument,
              "unknown format '" + std::string(name) + "' (expected csv, json, html or ttl)");
}

std::string_view content_type(ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return "text/csv; charset=utf-8";
    case ExportFormat::Json: return "application/json";
    case ExportFormat::Html: return "text/html; charset=utf-8";
    case ExportFormat::Turtle: return "text/turtle; charset=utf-8";
  }
  return "application/octet-stream";
}

std::string export_table(const ComparisonTable& table, ExportFormat format) {
  switch (format) {
    case ExportFormat::Csv: return to_csv(table);
    case ExportFormat::Json: return to_json(table).dump();
    case ExportFormat::Html: return to_html(table);
    case ExportFormat::Turtle: return to_turtle(table);
  }
  return {};
}

ComparisonTable table_from_json(std::string_view text) {
  ComparisonTable t;
  try {
    const auto j = json::parse(text);
    t.id = j.at("id").get<std::string>();
    t.label = j.at("label").get<std::string>();
    for (const auto& c : j.at("columns")) {
      ComparisonColumn col{c.at("contribution").get<std::string>(),
                           c.at("label").get<std::string>(),
                           c.at("paper_title").get<std::string>(), std::nullopt};
      if (!c.at("year").is_null()) col.year = c["year"].get<int>();
      t.columns.push_back(std::move(col));
    }
    for (const auto& r : j.at("rows")) {
      ComparisonRow row;
      row.property = r.at("property").get<std::string>();
      row.label = r.at("label").get<std::string>();
      row.members = r.at("members").get<std::vector<std::string>>();
      for (const auto& cell : r.at("cells")) {
        std::vector<CellValue> values;
        for (const auto& v : cell) {
          CellValue value{v.at("text").get<std::string>(), v.at("node").get<std::string>(),
                          v.at("property").get<std::string>(), std::nullopt,
                          v.at("metric").get<std::string>()};
          if (!v.at("number").is_null()) value.number = v["number"].get<double>();
          values.push_back(std::move(value));
        }
        row.cells.push_back(std::move(values));
      }
      if (row.cells.size() != t.columns.size())
        throw Error(ErrorCode::InvalidArgument,
                    "row " + row.property + " has " + std::to_string(row.cells.size()) +
                        " cells for " + std::to_string(t.columns.size()) + " columns");
      t.rows.push_back(std::move(row));
    }
    if (const auto& p = j.at("provenance"); !p.is_null())
      t.provenance = Provenance{p.at("created_at").get<std::string>(),
                                p.at("created_by").get<std::string>(),
                                p.at("license").get<std::string>()};
    if (const auto& id = j.at("persistent_id"); !id.is_null()) t.persistent_id = id.get<std::string>();
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad comparison JSON: ") + e.what());
  }
  return t;
}

std::vector<TimelineBucket> timeline(const ComparisonTable& table) {
  std::map<int, std::vector<std::string>> years;
  std::vector<std::string> unknown;
  for (const auto& c : table.columns) {
    if (c.year) years[*c.year].push_back(c.contribution);
    else unknown.push_back(c.contribution);
  }
  std::vector<TimelineBucket> out;
  for (auto& [y, cs] : years) out.push_back({std::to_string(y), std::move(cs)});
  if (!unknown.empty()) out.push_back({"unknown", std::move(unknown)});
  return out;
}

std::string timeline_to_json(const std::vector<TimelineBucket>& buckets) {
  json j = json::array();
  for (const auto& b : buckets) j.push_back({{"year", b.year}, {"contributions", b.contributions}});
  return j.dump();
}

}  // namespace odk
