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

// odk: command-line front end over the C API.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "odk/odk.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int exit_code;
  std::string message;
};

void check(odk_status status) {
  if (status != ODK_OK)
    throw Failure{kExitDomain, std::string(odk_status_name(status)) + ": " + odk_last_error()};
}

// Owns a string returned by the library.
class Out {
 public:
  Out() = default;
  Out(const Out&) = delete;
  Out& operator=(const Out&) = delete;
  ~Out() { odk_string_free(p_); }
  char** ptr() { return &p_; }
  std::string str() const { return p_ ? std::string(p_) : std::string(); }

 private:
  char* p_ = nullptr;
};

using StoreHandle = std::unique_ptr<odk_store, decltype(&odk_store_free)>;

StoreHandle open_store(const std::string& path) {
  odk_store* s = nullptr;
  check(odk_store_new(&s));
  StoreHandle store(s, &odk_store_free);
  check(odk_store_load_turtle_file(store.get(), path.c_str(), 1));
  return store;
}

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitDomain, "cannot read " + path};
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{kExitDomain, "cannot write " + path};
}

// Plain aligned text table for terminals.
std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      if (i) out += "  ";
      out += rows[k][i];
      if (i + 1 < rows[k].size()) out.append(width[i] - rows[k][i].size(), ' ');
    }
    out += '\n';
    if (k == 0) {
      for (std::size_t i = 0; i < width.size(); ++i) {
        if (i) out += "  ";
        out.append(width[i], '-');
      }
      out += '\n';
    }
  }
  return out;
}

std::string query_table(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  std::vector<std::vector<std::string>> rows{j["columns"].get<std::vector<std::string>>()};
  for (const auto& r : j["rows"]) {
    std::vector<std::string> row;
    for (const auto& c : r) row.push_back(c.is_null() ? "" : c.get<std::string>());
    rows.push_back(std::move(row));
  }
  return text_table(rows);
}

std::string comparison_table(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  std::vector<std::vector<std::string>> rows{{"property"}};
  for (const auto& c : j["columns"]) rows[0].push_back(c["label"].get<std::string>());
  for (const auto& r : j["rows"]) {
    std::vector<std::string> row{r["label"].get<std::string>()};
    for (const auto& cell : r["cells"]) {
      std::string text;
      for (const auto& v : cell) text += (text.empty() ? "" : "; ") + v["text"].get<std::string>();
      row.push_back(std::move(text));
    }
    rows.push_back(std::move(row));
  }
  std::string out = text_table(rows);
  for (const auto& w : j["warnings"]) out += "warning: " + w.get<std::string>() + "\n";
  return out;
}

std::string violations_text(const std::string& report_json) {
  const auto j = nlohmann::json::parse(report_json);
  std::string out = "does not conform\n";
  for (const auto& v : j["violations"])
    out += "  " + v["code"].get<std::string>() + " " + v["node"].get<std::string>() + " " +
           v["property"].get<std::string>() + ": " + v["message"].get<std::string>() + "\n";
  return out;
}

void on_ready(int port, void* quiet) {
  if (!*static_cast<bool*>(quiet)) std::cerr << "listening on port " << port << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toolkit for structured research-dataset descriptions in an RDF graph"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string store_path = "./store.ttl";
  std::string format;
  bool quiet = false;
  std::string created_by = "odk-cli";
  std::string created_at;
  app.add_option("--store", store_path, "Turtle file holding the store")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "html", "ttl", "table"}));
  app.add_flag("-q,--quiet", quiet, "Suppress informational output");
  app.add_option("--created-by", created_by, "Creator recorded in provenance")->capture_default_str();
  app.add_option("--created-at", created_at, "ISO-8601 timestamp overriding the current time");

  std::string ingest_file;
  auto* ingest = app.add_subcommand("ingest", "Ingest papers and dataset contributions from JSON");
  ingest->add_option("file", ingest_file, "Ingestion JSON file, or - for stdin")->required();

  std::string resource, template_id, template_file;
  auto* validate = app.add_subcommand("validate", "Check a resource against a template");
  validate->add_option("resource", resource, "Resource id such as R1")->required();
  validate->add_option("--template", template_id, "Template id such as R178304")->required();
  validate->add_option("--template-file", template_file, "Extra templates in JSON");

  std::string query_file;
  auto* query = app.add_subcommand("query", "Run a SELECT query (CSV by default)");
  query->add_option("file", query_file, "Query file, or - for stdin")->required();

  auto* explain = app.add_subcommand("explain", "Show the evaluation plan of a query");
  explain->add_option("file", query_file, "Query file, or - for stdin")->required();

  std::string root;
  std::vector<std::string> filters, hidden;
  std::string years;
  auto* compare = app.add_subcommand("compare", "Build a comparison table (JSON by default)");
  compare->add_option("root", root, "Comparison resource id")->required();
  compare->add_option("--filter", filters, "Keep contributions where KEY OP VALUE holds");
  compare->add_option("--hide", hidden, "Hide a property row (IRI, CURIE or label)");
  compare->add_option("--years", years, "Keep contributions published in A-B");

  auto* timeline = app.add_subcommand("timeline", "Bucket a comparison's contributions by year");
  timeline->add_option("root", root, "Comparison resource id")->required();

  auto* publish = app.add_subcommand("publish", "Assign an identifier and provenance, then freeze");
  publish->add_option("root", root, "Resource id to publish")->required();

  auto* metadata = app.add_subcommand("metadata", "Show the provenance of a published resource");
  metadata->add_option("root", root, "Resource id")->required();

  auto* describe = app.add_subcommand("describe", "Show the statements of a resource");
  describe->add_option("resource", resource, "Resource id")->required();

  std::string ttl_out;
  auto* export_cmd = app.add_subcommand("export", "Write the store as Turtle");
  export_cmd->add_option("--ttl", ttl_out, "Output file, or - for stdout")->required();

  auto* templates = app.add_subcommand("templates", "List the builtin templates as JSON");

  std::string bind, cors;
  auto* serve = app.add_subcommand("serve", "Serve the REST API");
  serve->add_option("--bind", bind, "host:port (default from ODK_BIND or 127.0.0.1:8080)");
  serve->add_option("--cors-origin", cors, "Allowed CORS origin (default from ODK_CORS_ORIGIN)");

  if (argc <= 1) {
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const char* at = created_at.empty() ? nullptr : created_at.c_str();
  const auto fmt = [&](const char* fallback) { return format.empty() ? std::string(fallback) : format; };
  try {
    if (*templates) {
      Out out;
      check(odk_templates_json(out.ptr()));
      std::cout << out.str() << '\n';
      return kExitOk;
    }
    if (*explain) {
      Out out;
      check(odk_explain(read_input(query_file).c_str(), out.ptr()));
      std::cout << out.str();
      return kExitOk;
    }

    auto store = open_store(store_path);
    if (*ingest) {
      Out out;
      check(odk_ingest_json(store.get(), read_input(ingest_file).c_str(), created_by.c_str(), at,
                            out.ptr()));
      check(odk_store_save_turtle_file(store.get(), store_path.c_str()));
      if (fmt("table") == "json") {
        std::cout << out.str() << '\n';
      } else if (!quiet) {
        const auto j = nlohmann::json::parse(out.str());
        for (const auto& c : j["contributions"]) std::cout << c.get<std::string>() << '\n';
      }
    } else if (*validate) {
      std::string extra;
      if (!template_file.empty()) extra = read_input(template_file);
      int conforms = 0;
      Out report;
      check(odk_validate(store.get(), resource.c_str(), template_id.c_str(),
                         extra.empty() ? nullptr : extra.c_str(), &conforms, report.ptr()));
      if (fmt("table") == "json") std::cout << report.str() << '\n';
      else if (conforms) std::cout << "conforms\n";
      else std::cout << violations_text(report.str());
      return conforms ? kExitOk : kExitDomain;
    } else if (*query) {
      const auto f = fmt("csv");
      if (f != "csv" && f != "json" && f != "table")
        throw Failure{kExitUsage, "query supports --format csv, json or table"};
      Out out;
      check(odk_query(store.get(), read_input(query_file).c_str(), f == "csv" ? "csv" : "json",
                      out.ptr()));
      if (f == "table") std::cout << query_table(out.str());
      else if (f == "json") std::cout << out.str() << '\n';
      else std::cout << out.str();
    } else if (*compare) {
      nlohmann::json spec = {{"hide", hidden}, {"require", filters}};
      if (!years.empty()) spec["years"] = years;
      const auto f = fmt("json");
      Out out;
      check(odk_compare(store.get(), root.c_str(), f == "table" ? "json" : f.c_str(),
                        spec.dump().c_str(), out.ptr()));
      if (f == "table") {
        std::cout << comparison_table(out.str());
      } else {
        std::cout << out.str();
        if (f == "json") std::cout << '\n';
      }
    } else if (*timeline) {
      Out out;
      check(odk_timeline(store.get(), root.c_str(), out.ptr()));
      std::cout << out.str() << '\n';
    } else if (*publish) {
      Out out;
      check(odk_publish(store.get(), root.c_str(), created_by.c_str(), at, out.ptr()));
      check(odk_store_save_turtle_file(store.get(), store_path.c_str()));
      std::cout << out.str() << '\n';
    } else if (*metadata) {
      Out out;
      check(odk_metadata(store.get(), root.c_str(), out.ptr()));
      std::cout << out.str() << '\n';
    } else if (*describe) {
      Out out;
      check(odk_describe(store.get(), resource.c_str(), out.ptr()));
      std::cout << out.str() << '\n';
    } else if (*export_cmd) {
      Out out;
      check(odk_store_export_turtle(store.get(), out.ptr()));
      write_output(ttl_out, out.str());
    } else if (*serve) {
      check(odk_serve(store.get(), bind.empty() ? nullptr : bind.c_str(),
                      cors.empty() ? nullptr : cors.c_str(), store_path.c_str(), &on_ready,
                      &quiet));
    }
  } catch (const Failure& f) {
    std::cerr << "odk: " << f.message << '\n';
    return f.exit_code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "odk: unexpected library output: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}
