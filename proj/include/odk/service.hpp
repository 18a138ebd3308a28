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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "odk/error.hpp"
#include "odk/store.hpp"

namespace odk {

struct ServiceOptions {
  std::string bind = "127.0.0.1:8080";
  /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin;
  /// Called with the new snapshot after every successful write.
  std::function<void(const Graph&)> on_commit;
  /// created_by for writes that do not name one.
  std::string default_creator = "odk-service";
};

/// Reads ODK_BIND and ODK_CORS_ORIGIN over the defaults.
ServiceOptions service_options_from_env();

struct HttpRequest {
  std::string method;
  std::string path;
  std::multimap<std::string, std::string> params;
  std::string body;
  std::string content_type;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

/// HTTP status for a domain error code.
int http_status(ErrorCode code);
/// `{"status", "code", "message"}` plus line/column/offset for syntax errors.
std::string api_error_json(int status, const Error& error);

/// `{"id", "label", "types", "statements"}` for a resource; throws NotFound
/// when the resource has no statements.
std::string describe_resource(const Graph& graph, const Term& resource);

/// REST front end over a store. Routing lives in handle(), which the HTTP
/// listener calls for every request.
class Service {
 public:
  Service(Store& store, ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  HttpResponse handle(const HttpRequest& request);

  /// Binds host:port from the options (port 0 picks a free one) and
  /// returns the bound port. Throws Error(Io) on failure.
  int bind();
  /// Serves until stop(). Call bind() first.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace odk
