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
#include <charconv>

#include <nlohmann/json.hpp>

#include "odk/comparison.hpp"

namespace odk {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

bool is_ordering(FilterOp op) { return op != FilterOp::Eq && op != FilterOp::Ne; }

FilterOp parse_op(std::string_view s) {
  if (s == "=" || s == "==") return FilterOp::Eq;
  if (s == "!=") return FilterOp::Ne;
  if (s == "<") return FilterOp::Lt;
  if (s == "<=") return FilterOp::Le;
  if (s == ">") return FilterOp::Gt;
  if (s == ">=") return FilterOp::Ge;
  throw Error(ErrorCode::InvalidArgument, "unknown comparator '" + std::string(s) + "'");
}

bool row_matches(const ComparisonRow& row, std::string_view key) {
  if (row.property == key) return true;
  if (std::find(row.members.begin(), row.members.end(), key) != row.members.end()) return true;
  const auto k = lower(key);
  if (lower(row.label) == k) return true;
  const auto& builtin = PrefixMap::builtin();
  for (const auto& m : row.members)
    if (auto c = builtin.compact(m); c && *c == key) return true;
  return false;
}

template <class T>
bool apply(FilterOp op, const T& a, const T& b) {
  switch (op) {
    case FilterOp::Eq: return a == b;
    case FilterOp::Ne: return a != b;
    case FilterOp::Lt: return a < b;
    case FilterOp::Le: return a <= b;
    case FilterOp::Gt: return a > b;
    case FilterOp::Ge: return a >= b;
  }
  return false;
}

}  // namespace

std::string_view to_string(FilterOp op) {
  switch (op) {
    case FilterOp::Eq: return "=";
    case FilterOp::Ne: return "!=";
    case FilterOp::Lt: return "<";
    case FilterOp::Le: return "<=";
    case FilterOp::Gt: return ">";
    case FilterOp::Ge: return ">=";
  }
  return "?";
}

FilterClause parse_filter_clause(std::string_view text) {
  static constexpr std::array<std::string_view, 6> kOps = {" >= ", " <= ", " != ",
                                                           " = ",  " > ",  " < "};
  for (const auto op : kOps) {
    const auto at = text.find(op);
    if (at == std::string_view::npos) continue;
    FilterClause clause{std::string(trim(text.substr(0, at))), parse_op(trim(op)),
                        std::string(trim(text.substr(at + op.size())))};
    if (clause.key.empty() || clause.value.empty()) break;
    if (is_ordering(clause.op) && !parse_number(clause.value))
      throw Error(ErrorCode::InvalidArgument,
                  "comparator " + std::string(to_string(clause.op)) + " needs a number, got '" +
                      clause.value + "'");
    return clause;
  }
  throw Error(ErrorCode::InvalidArgument,
              "filter must look like 'KEY OP VALUE' with OP one of = != < <= > >=: '" +
                  std::string(text) + "'");
}

YearRange parse_year_range(std::string_view text) {
  text = trim(text);
  const auto dash = text.find('-', 1);
  const auto a = parse_number(text.substr(0, dash));
  const auto b = dash == std::string_view::npos ? a : parse_number(text.substr(dash + 1));
  if (!a || !b || *a != static_cast<int>(*a) || *b != static_cast<int>(*b) || *a > *b)
    throw Error(ErrorCode::InvalidArgument,
                "year range must look like 2011-2022: '" + std::string(text) + "'");
  return {static_cast<int>(*a), static_cast<int>(*b)};
}

FilterSpec filter_spec_from_json(std::string_view json) {
  FilterSpec spec;
  try {
    const auto j = nlohmann::json::parse(json);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "filter spec must be an object");
    for (const auto& h : j.value("hide", nlohmann::json::array()))
      spec.hide_properties.insert(h.get<std::string>());
    for (const auto& r : j.value("require", nlohmann::json::array())) {
      if (r.is_string()) {
        spec.require.push_back(parse_filter_clause(r.get<std::string>()));
        continue;
      }
      FilterClause c{r.at("key").get<std::string>(), parse_op(r.at("op").get<std::string>()), ""};
      const auto& v = r.at("value");
      c.value = v.is_string() ? v.get<std::string>() : v.dump();
      spec.require.push_back(std::move(c));
    }
    if (j.contains("years") && j["years"].is_string())
      spec.year_range = parse_year_range(j["years"].get<std::string>());
    else if (j.contains("years") && !j["years"].is_null())
      spec.year_range = YearRange{j["years"].at("from").get<int>(), j["years"].at("to").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad filter spec: ") + e.what());
  }
  return spec;
}

ComparisonTable filter_table(const ComparisonTable& table, const FilterSpec& spec) {
  ComparisonTable out = table;
  if (spec.empty()) return out;

  std::vector<bool> keep(table.columns.size(), true);
  if (spec.year_range) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& y = table.columns[c].year;
      if (!y || *y < spec.year_range->from || *y > spec.year_range->to) keep[c] = false;
    }
  }

  for (const auto& clause : spec.require) {
    const auto wanted = parse_number(clause.value);
    const auto key = lower(clause.key);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (!keep[c]) continue;
      bool pass = false;
      for (const auto& row : table.rows) {
        const bool whole_row = row_matches(row, clause.key);
        for (const auto& v : row.cells[c]) {
          if (!whole_row && (v.metric.empty() || lower(v.metric) != key)) continue;
          if (is_ordering(clause.op) || (wanted && v.number)) {
            if (!wanted || !v.number) {
              out.warnings.push_back("skipped '" + v.text + "' of " + table.columns[c].label +
                                     " for clause '" + clause.key + " " +
                                     std::string(to_string(clause.op)) + " " + clause.value +
                                     "': not numeric");
              continue;
            }
            pass = apply(clause.op, *v.number, *wanted);
          } else {
            pass = apply(clause.op, v.text, clause.value);
          }
          if (pass) break;
        }
        if (pass) break;
      }
      keep[c] = pass;
    }
  }

  out.columns.clear();
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    if (keep[c]) out.columns.push_back(table.columns[c]);
  out.rows.clear();
  for (const auto& row : table.rows) {
    const bool hidden = std::any_of(spec.hide_properties.begin(), spec.hide_properties.end(),
                                    [&](const std::string& h) { return row_matches(row, h); });
    if (hidden) continue;
    ComparisonRow r = row;
    r.cells.clear();
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      if (keep[c]) r.cells.push_back(row.cells[c]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace odk
