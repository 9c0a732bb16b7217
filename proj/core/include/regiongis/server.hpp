#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "regiongis/api.hpp"
#include "regiongis/catalog.hpp"

namespace regiongis {

struct ServiceConfig {
  std::filesystem::path data_dir;
  std::string bind_address = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;
};

/// Reads <dir>/districts.geojson and <dir>/records.csv. Throws Error(Io) when
/// either file is unreadable, otherwise whatever load_catalog throws.
std::shared_ptr<const Catalog> load_catalog_dir(const std::filesystem::path& dir);

/// HTTP front end for GisApi. The catalog is loaded in the constructor, so a
/// server that exists always has data before it listens.
class GisServer {
 public:
  explicit GisServer(ServiceConfig config);
  ~GisServer();

  GisServer(const GisServer&) = delete;
  GisServer& operator=(const GisServer&) = delete;

  /// Binds the listening socket and returns the bound port. Throws Error(Io).
  int bind();
  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  bool running() const;

  /// Reloads the data directory and swaps the catalog in atomically. On
  /// failure the current catalog stays and the error propagates.
  void reload();

  const GisApi& api() const noexcept { return api_; }
  int port() const noexcept { return port_; }

 private:
  struct Impl;

  ServiceConfig config_;
  GisApi api_;
  int port_ = 0;
  std::unique_ptr<Impl> impl_;
};

}  // namespace regiongis
