#include "regiongis/error.hpp"

namespace regiongis {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroAreaGeometry: return "ZeroAreaGeometry";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnsupportedGeometry: return "UnsupportedGeometry";
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorCode::DuplicateFeatureId: return "DuplicateFeatureId";
    case ErrorCode::DuplicateEntryId: return "DuplicateEntryId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CsvSchemaError: return "CsvSchemaError";
    case ErrorCode::UnknownDistrictId: return "UnknownDistrictId";
    case ErrorCode::DuplicateRecordKey: return "DuplicateRecordKey";
    case ErrorCode::NegativeQuantity: return "NegativeQuantity";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::UnknownCommodity: return "UnknownCommodity";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::BadCoordinate: return "BadCoordinate";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::MethodNotAllowed: return "MethodNotAllowed";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::string> feature_id,
             std::optional<std::size_t> line)
    : std::runtime_error(message),
      code_(code),
      feature_id_(std::move(feature_id)),
      line_(line) {}

}  // namespace regiongis
