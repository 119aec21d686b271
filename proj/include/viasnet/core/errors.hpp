#pragma once

#include <stdexcept>
#include <string>

namespace viasnet {

// Bad or missing configuration (exit code 1 at the CLI).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Unreadable or malformed input data.
struct IngestError : std::runtime_error {
    explicit IngestError(const std::string& m) : std::runtime_error(m) {}
};

// A caller broke an interface contract (shape/state/count mismatch).
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& m) : std::runtime_error(m) {}
};

struct InvalidInputError : std::runtime_error {
    explicit InvalidInputError(const std::string& m) : std::runtime_error(m) {}
};

// External caption service failed after retries.
struct CaptionServiceError : std::runtime_error {
    explicit CaptionServiceError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace viasnet
