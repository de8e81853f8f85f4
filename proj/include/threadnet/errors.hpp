#pragma once

#include <stdexcept>
#include <string>

namespace threadnet {

// Unrecoverable input problem (unreadable stream, invalid store).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A single thread that cannot be assembled (zero or multiple roots, ...).
struct ThreadError : std::runtime_error {
    explicit ThreadError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or parameters.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace threadnet
