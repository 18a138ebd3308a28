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
#include <set>
#include <sstream>
#include <unordered_map>

#include "odk/query.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

struct PlannedPattern {
  TriplePattern pattern;
  std::size_t hop = 0;   ///< 1-based hop within a path, 0 for plain predicates
  std::size_t hops = 0;
};

std::vector<PlannedPattern> expand_paths(const QueryAst& ast) {
  std::vector<PlannedPattern> out;
  std::size_t fresh = 0;
  for (const auto& p : ast.patterns) {
    if (p.path.size() == 1) {
      out.push_back({p, 0, 0});
      continue;
    }
    PatternTerm from = p.subject;
    for (std::size_t i = 0; i < p.path.size(); ++i) {
      const bool last = i + 1 == p.path.size();
      PatternTerm to = last ? p.object : PatternTerm{Variable{"_path" + std::to_string(++fresh)}};
      out.push_back({TriplePattern{from, {p.path[i]}, to, p.block}, i + 1, p.path.size()});
      from = std::move(to);
    }
  }
  return out;
}

const std::string* var_name(const PatternTerm& t) {
  const auto* v = std::get_if<Variable>(&t);
  return v ? &v->name : nullptr;
}

// Greedy order: the pattern with the most bound positions joins next; ties
// keep source order.
std::vector<PlannedPattern> plan(const QueryAst& ast) {
  auto pending = expand_paths(ast);
  std::vector<PlannedPattern> out;
  std::set<std::string> bound;
  while (!pending.empty()) {
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      int score = 0;
      for (const auto* t : {&pending[i].pattern.subject, &pending[i].pattern.object}) {
        const auto* name = var_name(*t);
        if (!name || bound.contains(*name)) ++score;
      }
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    for (const auto* t : {&pending[best].pattern.subject, &pending[best].pattern.object})
      if (const auto* name = var_name(*t)) bound.insert(*name);
    out.push_back(std::move(pending[best]));
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

bool compare_terms(const Term& bound, CompareOp op, const Term& value) {
  const auto a = numeric_value(bound);
  const auto b = numeric_value(value);
  if (a && b) {
    switch (op) {
      case CompareOp::Eq: return *a == *b;
      case CompareOp::Ne: return *a != *b;
      case CompareOp::Lt: return *a < *b;
      case CompareOp::Le: return *a <= *b;
      case CompareOp::Gt: return *a > *b;
      case CompareOp::Ge: return *a >= *b;
    }
  }
  if (op == CompareOp::Eq) return bound == value;
  if (op == CompareOp::Ne) return bound != value;
  const auto is_string = [](const Term& t) {
    return t.is_literal() && t.datatype() == vocab::kXsdString;
  };
  if (!is_string(bound) || !is_string(value)) return false;
  const int c = bound.value().compare(value.value());
  switch (op) {
    case CompareOp::Lt: return c < 0;
    case CompareOp::Le: return c <= 0;
    case CompareOp::Gt: return c > 0;
    case CompareOp::Ge: return c >= 0;
    default: return false;
  }
}

class Evaluator {
 public:
  Evaluator(const Graph& graph, const QueryAst& ast) : graph_(graph), ast_(ast) {
    for (auto& p : plan(ast)) {
      Step step{slot_of(p.pattern.subject), p.pattern.path.front(), slot_of(p.pattern.object),
                std::nullopt, std::nullopt};
      if (step.s < 0) step.s_const = std::get<Term>(p.pattern.subject);
      if (step.o < 0) step.o_const = std::get<Term>(p.pattern.object);
      steps_.push_back(std::move(step));
    }
    for (const auto& f : ast.filters) {
      std::vector<std::pair<int, const Comparison*>> d;
      for (const auto& c : f.disjuncts) d.emplace_back(slots_.at(c.variable), &c);
      filters_.push_back(std::move(d));
    }
    binding_.resize(slots_.size());
  }

  std::vector<std::vector<Term>> solutions() {
    solve(0);
    return std::move(solutions_);
  }

  int slot(const std::string& name) const { return slots_.at(name); }

 private:
  struct Step {
    int s;
    Term p;
    int o;
    std::optional<Term> s_const;
    std::optional<Term> o_const;
  };

  int slot_of(const PatternTerm& t) {
    const auto* name = var_name(t);
    if (!name) return -1;
    auto [it, inserted] = slots_.try_emplace(*name, static_cast<int>(slots_.size()));
    return it->second;
  }

  const std::optional<Term>& value_at(int slot, const std::optional<Term>& constant) const {
    return slot < 0 ? constant : binding_[static_cast<std::size_t>(slot)];
  }

  void solve(std::size_t depth) {
    if (depth == steps_.size()) {
      if (passes_filters()) {
        std::vector<Term> row;
        row.reserve(binding_.size());
        for (const auto& b : binding_) row.push_back(*b);
        solutions_.push_back(std::move(row));
      }
      return;
    }
    const Step& step = steps_[depth];
    const auto s = value_at(step.s, step.s_const);
    const auto o = value_at(step.o, step.o_const);
    const bool bind_s = step.s >= 0 && !s;
    const bool bind_o = step.o >= 0 && !o;
    for (const auto& t : graph_.match(s, step.p, o)) {
      if (bind_s && bind_o && step.s == step.o && t.subject != t.object) continue;
      if (bind_s) binding_[static_cast<std::size_t>(step.s)] = t.subject;
      if (bind_o) binding_[static_cast<std::size_t>(step.o)] = t.object;
      solve(depth + 1);
    }
    if (bind_s) binding_[static_cast<std::size_t>(step.s)].reset();
    if (bind_o) binding_[static_cast<std::size_t>(step.o)].reset();
  }

  bool passes_filters() const {
    for (const auto& disjunction : filters_) {
      const bool any = std::any_of(disjunction.begin(), disjunction.end(), [&](const auto& d) {
        return compare_terms(*binding_[static_cast<std::size_t>(d.first)], d.second->op,
                             d.second->value);
      });
      if (!any) return false;
    }
    return true;
  }

  const Graph& graph_;
  const QueryAst& ast_;
  std::map<std::string, int> slots_;
  std::vector<Step> steps_;
  std::vector<std::vector<std::pair<int, const Comparison*>>> filters_;
  std::vector<std::optional<Term>> binding_;
  std::vector<std::vector<Term>> solutions_;
};

std::string show(const PatternTerm& t, const PrefixMap& prefixes) {
  if (const auto* v = std::get_if<Variable>(&t)) return "?" + v->name;
  const Term& term = std::get<Term>(t);
  if (term.is_iri()) {
    if (auto c = prefixes.compact(term.value())) return *c;
  }
  return term.ntriples();
}

std::string_view op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

}  // namespace

std::vector<TriplePattern> join_plan(const QueryAst& ast) {
  std::vector<TriplePattern> out;
  for (auto& p : plan(ast)) out.push_back(std::move(p.pattern));
  return out;
}

std::string explain(const QueryAst& ast) {
  const PrefixMap prefixes = PrefixMap::builtin();
  std::ostringstream out;
  std::size_t n = 0;
  for (const auto& p : plan(ast)) {
    out << ++n << ". scan " << show(p.pattern.subject, prefixes) << ' '
        << show(PatternTerm{p.pattern.path.front()}, prefixes) << ' '
        << show(p.pattern.object, prefixes);
    if (p.hops > 0) out << "  (path hop " << p.hop << '/' << p.hops << ')';
    out << '\n';
  }
  if (!ast.filters.empty()) {
    out << ++n << ". filter ";
    for (std::size_t i = 0; i < ast.filters.size(); ++i) {
      if (i) out << " && ";
      const auto& d = ast.filters[i].disjuncts;
      if (d.size() > 1) out << '(';
      for (std::size_t k = 0; k < d.size(); ++k) {
        if (k) out << " || ";
        out << '?' << d[k].variable << ' ' << op_text(d[k].op) << ' '
            << show(PatternTerm{d[k].value}, prefixes);
      }
      if (d.size() > 1) out << ')';
    }
    out << '\n';
  }
  if (ast.has_aggregate() || !ast.group_by.empty()) {
    out << ++n << ". group by";
    if (ast.group_by.empty()) out << " (all)";
    for (const auto& g : ast.group_by) out << " ?" << g;
    const auto columns = ast.columns();
    for (std::size_t i = 0; i < ast.projection.size(); ++i) {
      if (const auto* agg = std::get_if<GroupConcat>(&ast.projection[i]))
        out << "; group_concat(" << (agg->distinct ? "distinct " : "") << '?' << agg->variable
            << ") as ?" << columns[i];
    }
    out << '\n';
  }
  if (ast.distinct) out << ++n << ". distinct\n";
  return out.str();
}

ResultTable evaluate(const Graph& graph, const QueryAst& ast) {
  ResultTable table;
  table.columns = ast.columns();
  Evaluator ev(graph, ast);
  const auto solutions = ev.solutions();

  if (ast.has_aggregate() || !ast.group_by.empty()) {
    std::vector<int> key_slots;
    for (const auto& g : ast.group_by) key_slots.push_back(ev.slot(g));
    std::map<std::vector<Term>, std::vector<const std::vector<Term>*>> groups;
    for (const auto& s : solutions) {
      std::vector<Term> key;
      for (int k : key_slots) key.push_back(s[static_cast<std::size_t>(k)]);
      groups[std::move(key)].push_back(&s);
    }
    // An aggregate over no groups still yields one row for the empty group.
    if (groups.empty() && ast.group_by.empty()) groups[{}];
    for (const auto& [key, members] : groups) {
      std::vector<std::optional<Term>> row;
      for (const auto& item : ast.projection) {
        if (const auto* v = std::get_if<Variable>(&item)) {
          const auto pos = std::find(ast.group_by.begin(), ast.group_by.end(), v->name) -
                           ast.group_by.begin();
          row.emplace_back(key[static_cast<std::size_t>(pos)]);
          continue;
        }
        const auto& agg = std::get<GroupConcat>(item);
        const auto slot = static_cast<std::size_t>(ev.slot(agg.variable));
        std::vector<std::string> values;
        for (const auto* m : members) values.push_back((*m)[slot].value());
        std::sort(values.begin(), values.end());
        if (agg.distinct) values.erase(std::unique(values.begin(), values.end()), values.end());
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (i) joined += agg.separator;
          joined += values[i];
        }
        row.emplace_back(Term::literal(joined));
      }
      table.rows.push_back(std::move(row));
    }
  } else {
    std::vector<std::size_t> slots;
    for (const auto& item : ast.projection)
      slots.push_back(static_cast<std::size_t>(ev.slot(std::get<Variable>(item).name)));
    for (const auto& s : solutions) {
      std::vector<std::optional<Term>> row;
      for (auto k : slots) row.emplace_back(s[k]);
      table.rows.push_back(std::move(row));
    }
  }

  std::sort(table.rows.begin(), table.rows.end());
  if (ast.distinct)
    table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
  return table;
}

}  // namespace odk
