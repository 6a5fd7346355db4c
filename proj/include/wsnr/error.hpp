#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsnr {

enum class ErrorCode {
    InvalidArgument,
    ParseError,
    DuplicateId,
    InvalidGeometry,
    DegenerateGeometry,
    UnknownObject,
    ReferentialError,
    InvalidRadius,
    NotPolygonal,
    ZeroDistance,
    ZeroCost,
    NoConnections,
    CoefficientSum,
    MissingFactorData,
    MissingNetwork,
    EmptyNeighborhood,
    WeightsNotNormalized,
    DegenerateDistribution,
    TooFewObjects,
    MissingAttribute,
    EmptyDataset,
    BaselineZeroError,
    MismatchedDatasets,
    InvalidSpec,
    TooLarge,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carried by every fallible operation in the library.
///
/// `where` names the module and operation ("neighborhood/build_framework"),
/// `object_id` the offending spatial object when one is known.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string where = {}, std::string object_id = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& where() const noexcept { return where_; }
    const std::string& object_id() const noexcept { return object_id_; }
    const std::string& detail() const noexcept { return detail_; }

    /// Copy of this error with context attached where it is still missing.
    Error with_context(std::string_view where, std::string_view object_id = {}) const;

private:
    ErrorCode code_;
    std::string detail_;
    std::string where_;
    std::string object_id_;
};

}  // namespace wsnr
