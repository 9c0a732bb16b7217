// regiongis: serve, validate or generate district potential data.
//
// Exit codes: 0 ok, 1 validation error, 2 usage error.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "regiongis/catalog.hpp"
#include "regiongis/error.hpp"
#include "regiongis/fixture.hpp"
#include "regiongis/server.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_stop{false};
std::atomic<bool> g_reload{false};

extern "C" void on_signal(int sig) {
  if (sig == SIGHUP) {
    g_reload = true;
  } else {
    g_stop = true;
  }
}

void print_error(const regiongis::Error& e) {
  std::cerr << "error: " << regiongis::to_string(e.code()) << ": " << e.what() << "\n";
}

int run_validate(const std::string& data_dir) {
  try {
    const auto catalog = regiongis::load_catalog_dir(data_dir);
    std::cout << catalog->districts().size() << " districts, " << catalog->records().size() << " records\n";
    for (auto cat : regiongis::kAllCategories) {
      std::size_t n = 0;
      for (const auto& r : catalog->records()) n += r.category == cat;
      std::cout << "  " << regiongis::category_name(cat) << ": " << n << " records\n";
    }
    return kExitOk;
  } catch (const regiongis::Error& e) {
    print_error(e);
    return kExitValidation;
  }
}

int run_fixture(const std::string& out_dir, std::uint64_t seed) {
  try {
    regiongis::write_fixture(regiongis::generate_fixture(seed), out_dir);
    std::cout << "wrote " << regiongis::kFixtureDistrictCount << " districts to " << out_dir << "\n";
    return kExitOk;
  } catch (const regiongis::Error& e) {
    print_error(e);
    return kExitValidation;
  }
}

int run_serve(regiongis::ServiceConfig config) {
  const std::string bind_address = config.bind_address;
  try {
    regiongis::GisServer server(std::move(config));
    const int port = server.bind();
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::signal(SIGHUP, on_signal);

    std::thread watcher([&server] {
      while (!g_stop) {
        if (g_reload.exchange(false)) {
          try {
            server.reload();
            std::cerr << "catalog reloaded\n";
          } catch (const regiongis::Error& e) {
            print_error(e);
            std::cerr << "keeping previous catalog\n";
          }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
      }
      server.stop();
    });

    const auto catalog = server.api().snapshot();
    std::cout << "serving " << catalog->districts().size() << " districts on http://" << bind_address << ":"
              << port << "\n"
              << std::flush;
    server.listen();
    g_stop = true;
    watcher.join();
    return kExitOk;
  } catch (const regiongis::Error& e) {
    print_error(e);
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regional potential web GIS: district maps, potential records and a read-only HTTP API"};
  app.require_subcommand(1);

  regiongis::ServiceConfig serve_cfg;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Load a data directory and serve the HTTP API");
  serve->add_option("--data-dir", serve_cfg.data_dir, "Directory with districts.geojson and records.csv")
      ->envname("GIS_DATA_DIR")
      ->required()
      ->check(CLI::ExistingDirectory);
  serve->add_option("--port", serve_cfg.port, "TCP port (0 picks a free one)")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535));
  serve->add_option("--bind", serve_cfg.bind_address, "Bind address")->capture_default_str();
  serve->add_option("--static-dir", static_dir, "Directory of UI files served at /")->check(CLI::ExistingDirectory);

  std::string validate_dir;
  auto* validate = app.add_subcommand("validate", "Load a data directory and report counts or the first error");
  validate->add_option("--data-dir", validate_dir, "Directory with districts.geojson and records.csv")
      ->envname("GIS_DATA_DIR")
      ->required()
      ->check(CLI::ExistingDirectory);

  std::string fixture_dir;
  std::uint64_t seed = 42;
  auto* fixture = app.add_subcommand("fixture", "Write the synthetic 19-district data set");
  fixture->add_option("--out", fixture_dir, "Output directory (created if missing)")->required();
  fixture->add_option("--seed", seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*serve) {
    if (!static_dir.empty()) serve_cfg.static_dir = static_dir;
    return run_serve(std::move(serve_cfg));
  }
  if (*validate) return run_validate(validate_dir);
  return run_fixture(fixture_dir, seed);
}
