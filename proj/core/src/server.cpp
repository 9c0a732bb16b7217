#include "regiongis/server.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "regiongis/error.hpp"
#include "regiongis/fixture.hpp"

namespace regiongis {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::shared_ptr<const Catalog> load_catalog_dir(const std::filesystem::path& dir) {
  const std::string geojson = read_file(dir / kDistrictsFile);
  const std::string csv = read_file(dir / kRecordsFile);
  return std::make_shared<const Catalog>(load_catalog(geojson, csv));
}

struct GisServer::Impl {
  httplib::Server http;
};

GisServer::GisServer(ServiceConfig config)
    : config_(std::move(config)), api_(load_catalog_dir(config_.data_dir)), impl_(std::make_unique<Impl>()) {
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.params.emplace(k, v);
    request.if_none_match = req.get_header_value("If-None-Match");
    const ApiResponse out = api_.handle(request);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (out.status != 304) res.set_content(out.body, out.content_type);
  };
  auto& http = impl_->http;
  http.Get(R"(/api/.*)", dispatch);
  http.Post(R"(/api/.*)", dispatch);
  http.Put(R"(/api/.*)", dispatch);
  http.Patch(R"(/api/.*)", dispatch);
  http.Delete(R"(/api/.*)", dispatch);
  if (config_.static_dir) {
    if (!http.set_mount_point("/", config_.static_dir->string())) {
      throw Error(ErrorCode::Io, "static directory not found: " + config_.static_dir->string());
    }
  }
}

GisServer::~GisServer() { stop(); }

int GisServer::bind() {
  auto& http = impl_->http;
  if (config_.port == 0) {
    port_ = http.bind_to_any_port(config_.bind_address);
  } else {
    port_ = http.bind_to_port(config_.bind_address, config_.port) ? config_.port : -1;
  }
  if (port_ < 0) {
    throw Error(ErrorCode::Io, "cannot bind " + config_.bind_address + ":" + std::to_string(config_.port));
  }
  return port_;
}

void GisServer::listen() { impl_->http.listen_after_bind(); }

void GisServer::stop() {
  if (impl_) impl_->http.stop();
}

bool GisServer::running() const { return impl_->http.is_running(); }

void GisServer::reload() { api_.replace_catalog(load_catalog_dir(config_.data_dir)); }

}  // namespace regiongis
