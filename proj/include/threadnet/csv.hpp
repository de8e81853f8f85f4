#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

namespace threadnet {

// Shortest round-trip decimal form; locale independent, so output bytes
// are reproducible across runs and machines.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string csv_field(double v) { return format_double(v); }

template <typename T>
    requires std::is_integral_v<T>
std::string csv_field(T v) {
    return std::to_string(v);
}

inline std::string csv_field(const std::string& v) { return v; }

template <typename T>
std::string csv_field(const std::optional<T>& v) {
    return v ? csv_field(*v) : std::string();
}

inline void csv_row_impl(std::string&) {}

template <typename First, typename... Rest>
void csv_row_impl(std::string& out, const First& first, const Rest&... rest) {
    out += csv_field(first);
    if constexpr (sizeof...(rest) > 0) {
        out += ',';
        csv_row_impl(out, rest...);
    }
}

template <typename... Fields>
void csv_row(std::string& out, const Fields&... fields) {
    csv_row_impl(out, fields...);
    out += '\n';
}

}  // namespace threadnet
