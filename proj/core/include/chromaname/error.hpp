#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chromaname {

/// Machine-readable failure categories shared by every module.
enum class ErrorCode {
    MalformedHex,
    EmptyAfterNormalization,
    FileUnreadable,
    FileUnwritable,
    MalformedRow,
    EmptyCorpus,
    TooFewDistinctPoints,
    InvalidArgument,
    NoKneeFound,
    EmptyCluster,
    SchemaViolation,
    EmptyPalette,
    EmptyImage,
    UndecodableImage,
    NoImagesFound,
    PaletteMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace chromaname
