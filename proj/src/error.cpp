#include "egg/error.hpp"

namespace egg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kUnknownSpatialId: return "UnknownSpatialId";
    case ErrorCode::kUnknownEventId: return "UnknownEventId";
    case ErrorCode::kUnknownLocationId: return "UnknownLocationId";
    case ErrorCode::kSnapshotOutsideInterval: return "SnapshotOutsideInterval";
    case ErrorCode::kEmptyInputSet: return "EmptyInputSet";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kSchema: return "SchemaViolation";
    case ErrorCode::kIntegrity: return "IntegrityViolation";
    case ErrorCode::kTransport: return "TransportError";
    case ErrorCode::kExtractionFailed: return "ExtractionFailed";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kModalityViolation: return "ModalityViolation";
    case ErrorCode::kJudgeFailed: return "JudgeFailed";
    case ErrorCode::kInfeasibleParams: return "InfeasibleParams";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace egg
