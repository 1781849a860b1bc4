#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dnarot/error.hpp"
#include "dnarot/nucleotide.hpp"
#include "dnarot/tokens.hpp"

namespace dnarot {

/// Fixed-length constrained code for coefficient values. Category c uses the
/// first 2^c words (A<T<C<G lexicographic) of length L(c) with no repeated
/// adjacent letters. Never rotated.
class FixedLengthValueCode {
public:
    /// Smallest L with 4 * 3^(L-1) >= 2^c.
    static constexpr std::size_t word_length(int category) {
        std::uint64_t capacity = 4;
        std::size_t len = 1;
        while (capacity < (std::uint64_t{1} << category)) {
            capacity *= 3;
            ++len;
        }
        return len;
    }

    FixedLengthValueCode() {
        for (int c = 1; c <= kMaxCategory; ++c) {
            const std::size_t needed = std::size_t{1} << c;
            auto& words = words_[c];
            std::string prefix;
            enumerate(word_length(c), prefix, needed, words);
            for (std::size_t i = 0; i < words.size(); ++i) index_[c].emplace(words[i], i);
        }
    }

    const std::vector<std::string>& words(int category) const { return words_.at(check(category)); }

    /// Value order within a category: negatives ascending, then positives ascending.
    static std::size_t value_index(int category, std::int32_t value) {
        const std::int32_t lo = std::int32_t{1} << (category - 1);
        const std::int32_t hi = (std::int32_t{1} << category) - 1;
        if (value >= lo && value <= hi) return static_cast<std::size_t>(value);
        if (value <= -lo && value >= -hi) return static_cast<std::size_t>(value + hi);
        throw InvalidArgument("value " + std::to_string(value) + " is not in category " + std::to_string(category));
    }

    static std::int32_t index_value(int category, std::size_t index) {
        const std::int32_t lo = std::int32_t{1} << (category - 1);
        const std::int32_t hi = (std::int32_t{1} << category) - 1;
        const auto i = static_cast<std::int32_t>(index);
        return i < lo ? i - hi : i;
    }

    const std::string& encode(int category, std::int32_t value) const {
        return words_.at(check(category))[value_index(category, value)];
    }

    /// Reads word_length(category) nucleotides at pos.
    std::int32_t decode(int category, std::string_view ns, std::size_t& pos) const {
        const std::size_t len = word_length(check(category));
        if (pos + len > ns.size()) throw DecodeError("stream ends inside a value codeword", pos);
        const auto it = index_[category].find(std::string(ns.substr(pos, len)));
        if (it == index_[category].end()) throw DecodeError("unknown value codeword", pos);
        pos += len;
        return index_value(category, it->second);
    }

private:
    static int check(int category) {
        if (category < 1 || category > kMaxCategory) throw InvalidArgument("value category out of range");
        return category;
    }

    static void enumerate(std::size_t len, std::string& prefix, std::size_t needed, std::vector<std::string>& out) {
        if (out.size() == needed) return;
        if (prefix.size() == len) {
            out.push_back(prefix);
            return;
        }
        for (const char c : kNucleotideLetters) {
            if (!prefix.empty() && prefix.back() == c) continue;
            prefix.push_back(c);
            enumerate(len, prefix, needed, out);
            prefix.pop_back();
            if (out.size() == needed) return;
        }
    }

    std::array<std::vector<std::string>, kMaxCategory + 1> words_;
    std::array<std::unordered_map<std::string, std::size_t>, kMaxCategory + 1> index_;
};

inline const FixedLengthValueCode& build_value_code() {
    static const FixedLengthValueCode code;
    return code;
}

} // namespace dnarot
