#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dnarot {

/// The quaternary alphabet. Enumerator values are the cyclic order A < T < C < G
/// used by letter rotation and by the 2-bit header packing (A=00, T=01, C=10, G=11).
enum class Nucleotide : std::uint8_t { A = 0, T = 1, C = 2, G = 3 };

inline constexpr std::array<Nucleotide, 4> kNucleotides = {Nucleotide::A, Nucleotide::T,
                                                           Nucleotide::C, Nucleotide::G};
inline constexpr std::string_view kNucleotideLetters = "ATCG";

constexpr char to_char(Nucleotide n) noexcept {
    return kNucleotideLetters[static_cast<std::uint8_t>(n)];
}

constexpr std::uint8_t index_of(Nucleotide n) noexcept {
    return static_cast<std::uint8_t>(n);
}

constexpr std::optional<Nucleotide> from_char(char c) noexcept {
    switch (c) {
    case 'A': return Nucleotide::A;
    case 'T': return Nucleotide::T;
    case 'C': return Nucleotide::C;
    case 'G': return Nucleotide::G;
    default: return std::nullopt;
    }
}

constexpr bool is_nucleotide(char c) noexcept { return from_char(c).has_value(); }

/// Position of the first non-ACGT character, or npos.
inline std::size_t find_invalid_nucleotide(std::string_view s) noexcept {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_nucleotide(s[i])) return i;
    }
    return std::string_view::npos;
}

} // namespace dnarot
