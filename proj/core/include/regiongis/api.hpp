#pragma once

// Transport-independent request handling for the read-only GIS API. The
// HTTP server adapts cpp-httplib requests onto GisApi::handle; tests can call
// it directly.

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "regiongis/catalog.hpp"

namespace regiongis {

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> params;
  std::string if_none_match;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;

  /// Value of the named header, or "" when absent.
  std::string header(const std::string& name) const;
};

/// Serves one immutable Catalog snapshot at a time. replace_catalog swaps
/// the snapshot atomically; a request in flight keeps the snapshot it
/// started with.
class GisApi {
 public:
  explicit GisApi(std::shared_ptr<const Catalog> catalog);

  ApiResponse handle(const ApiRequest& request) const;

  std::shared_ptr<const Catalog> snapshot() const;
  void replace_catalog(std::shared_ptr<const Catalog> catalog);

 private:
  std::shared_ptr<const Catalog> catalog_;
};

}  // namespace regiongis
