#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace terravis {

enum class ErrorCode {
    TooShort,
    NonMonotone,
    OutOfRange,
    InvalidViewpoints,
    InconsistentEventList,
    InvalidK,
    NoViewpoints,
    ConstructionFailed,
    Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what,
          std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(what), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }
    /// Offending vertex/viewpoint index, when the error is about one.
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

}  // namespace terravis
