#include "wsnr/error.hpp"

namespace wsnr {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
        case ErrorCode::UnknownObject: return "UnknownObject";
        case ErrorCode::ReferentialError: return "ReferentialError";
        case ErrorCode::InvalidRadius: return "InvalidRadius";
        case ErrorCode::NotPolygonal: return "NotPolygonal";
        case ErrorCode::ZeroDistance: return "ZeroDistance";
        case ErrorCode::ZeroCost: return "ZeroCost";
        case ErrorCode::NoConnections: return "NoConnections";
        case ErrorCode::CoefficientSum: return "CoefficientSum";
        case ErrorCode::MissingFactorData: return "MissingFactorData";
        case ErrorCode::MissingNetwork: return "MissingNetwork";
        case ErrorCode::EmptyNeighborhood: return "EmptyNeighborhood";
        case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
        case ErrorCode::TooFewObjects: return "TooFewObjects";
        case ErrorCode::MissingAttribute: return "MissingAttribute";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::BaselineZeroError: return "BaselineZeroError";
        case ErrorCode::MismatchedDatasets: return "MismatchedDatasets";
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::string& where,
                    const std::string& object_id) {
    std::string out;
    if (!where.empty()) {
        out += where;
        out += ": ";
    }
    out += to_string(code);
    if (!object_id.empty()) {
        out += " [object ";
        out += object_id;
        out += "]";
    }
    if (!message.empty()) {
        out += ": ";
        out += message;
    }
    return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::string where, std::string object_id)
    : std::runtime_error(compose(code, message, where, object_id)),
      code_(code),
      detail_(std::move(message)),
      where_(std::move(where)),
      object_id_(std::move(object_id)) {}

Error Error::with_context(std::string_view where, std::string_view object_id) const {
    return Error(code_, detail_, where_.empty() ? std::string(where) : where_,
                 object_id_.empty() ? std::string(object_id) : object_id_);
}

}  // namespace wsnr
