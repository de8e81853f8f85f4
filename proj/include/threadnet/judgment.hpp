#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace threadnet {

// Judgment expressed by a comment. The first six values are the voting
// acronyms of the community; Unsure marks a comment mixing two or more
// distinct voting acronyms; None marks a discussing, non-voting comment.
enum class Judgment : std::uint8_t {
    YTA = 0,
    YWBTA,
    NTA,
    YWNBTA,
    ESH,
    NAH,
    Unsure,
    None,
};

inline constexpr int kVoteLabelCount = 6;

inline constexpr bool is_vote_label(Judgment j) {
    return static_cast<int>(j) < kVoteLabelCount;
}

// A comment "votes" when it contains at least one voting acronym, so an
// Unsure comment counts as voting even though its side is undetermined.
inline constexpr bool is_voting(Judgment j) {
    return j != Judgment::None;
}

inline constexpr std::string_view to_string(Judgment j) {
    constexpr std::array<std::string_view, 8> names = {
        "YTA", "YWBTA", "NTA", "YWNBTA", "ESH", "NAH", "UNSURE", "NONE"};
    return names[static_cast<int>(j)];
}

inline std::optional<Judgment> judgment_from_string(std::string_view s) {
    constexpr std::array<std::string_view, 8> names = {
        "YTA", "YWBTA", "NTA", "YWNBTA", "ESH", "NAH", "UNSURE", "NONE"};
    for (int i = 0; i < 8; ++i) {
        if (s == names[i]) return static_cast<Judgment>(i);
    }
    return std::nullopt;
}

namespace detail {

inline constexpr bool is_token_char(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

inline constexpr char upper_ascii(unsigned char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c);
}

// Whole-token, case-insensitive match against one voting acronym.
inline bool token_equals(std::string_view token, std::string_view acronym) {
    if (token.size() != acronym.size()) return false;
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (upper_ascii(static_cast<unsigned char>(token[i])) != acronym[i]) return false;
    }
    return true;
}

}  // namespace detail

// Extracts the judgment of a comment body. Tokens are maximal runs of
// ASCII alphanumerics; each token is matched case-insensitively against
// the six voting acronyms (INFO is not a vote and is ignored). No match
// yields None, one distinct acronym yields that label, and two or more
// distinct acronyms yield Unsure. Total over arbitrary input.
inline Judgment extract_judgment(std::string_view body) {
    constexpr std::array<std::string_view, kVoteLabelCount> acronyms = {
        "YTA", "YWBTA", "NTA", "YWNBTA", "ESH", "NAH"};

    unsigned seen = 0;
    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && !detail::is_token_char(static_cast<unsigned char>(body[i]))) ++i;
        std::size_t start = i;
        while (i < body.size() && detail::is_token_char(static_cast<unsigned char>(body[i]))) ++i;
        if (i == start) break;
        std::string_view token = body.substr(start, i - start);
        if (token.size() < 3 || token.size() > 6) continue;
        for (int a = 0; a < kVoteLabelCount; ++a) {
            if (detail::token_equals(token, acronyms[a])) {
                seen |= 1u << a;
                break;
            }
        }
    }

    if (seen == 0) return Judgment::None;
    if ((seen & (seen - 1)) != 0) return Judgment::Unsure;
    int idx = 0;
    while (!(seen & (1u << idx))) ++idx;
    return static_cast<Judgment>(idx);
}

}  // namespace threadnet
