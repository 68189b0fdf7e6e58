#pragma once

#include <stdexcept>
#include <string>

namespace phasevox {

// Usage/contract violations (bad arguments, malformed config).
struct UsageError : std::invalid_argument {
    explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Problems with input data (missing file, bad encoding, degenerate content).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace phasevox
