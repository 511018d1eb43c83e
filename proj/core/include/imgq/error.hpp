#pragma once

#include <stdexcept>
#include <string>

namespace imgq {

enum class ErrorCode {
    DecodeError,
    UnsupportedConversion,
    InvalidArgument,
    TooSmall,
    DegenerateImage,
    IoError,
    SchemaMismatch,
    EmptyInput,
    InsufficientClassMembers,
    DegenerateLabels,
    DimensionMismatch,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// batch callers can decide between skip and abort without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace imgq
