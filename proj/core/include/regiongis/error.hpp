#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regiongis {

enum class ErrorCode {
  // geometry
  ZeroAreaGeometry,
  // geojson
  MalformedDocument,
  UnsupportedGeometry,
  InvalidRing,
  CoordinateOutOfRange,
  DuplicateFeatureId,
  // spatial index
  DuplicateEntryId,
  InvalidArgument,
  // catalog
  CsvSchemaError,
  UnknownDistrictId,
  DuplicateRecordKey,
  NegativeQuantity,
  UnknownCategory,
  UnknownCommodity,
  InsufficientData,
  // service
  BadCoordinate,
  BadParameter,
  UnsupportedFormat,
  NotFound,
  MethodNotAllowed,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Typed failure raised by every module. `line` is set for CSV input
/// errors, `feature_id` for GeoJSON validation errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::string> feature_id = std::nullopt,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::string>& feature_id() const noexcept { return feature_id_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::string> feature_id_;
  std::optional<std::size_t> line_;
};

}  // namespace regiongis
