#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "dnarot/codebook.hpp"
#include "dnarot/dct.hpp"
#include "dnarot/error.hpp"

namespace dnarot {

inline constexpr std::array<std::uint8_t, 64> kZigzag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,  12, 19, 26, 33, 40, 48,
    41, 34, 27, 20, 13, 6,  7,  14, 21, 28, 35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23,
    30, 37, 44, 51, 58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

inline constexpr int kMaxCategory = 11;

enum class TokenFlavor : std::uint8_t { DC, AC, EOB, ZRL };

/// JPEG-style (run, category) token. EOB is (0,0), ZRL is (15,0), DC has run 0.
struct RunCategorySymbol {
    int run = 0;
    int category = 0;
    TokenFlavor flavor = TokenFlavor::DC;

    static constexpr RunCategorySymbol dc(int category) { return {0, category, TokenFlavor::DC}; }
    static constexpr RunCategorySymbol ac(int run, int category) { return {run, category, TokenFlavor::AC}; }
    static constexpr RunCategorySymbol eob() { return {0, 0, TokenFlavor::EOB}; }
    static constexpr RunCategorySymbol zrl() { return {15, 0, TokenFlavor::ZRL}; }

    bool operator==(const RunCategorySymbol&) const = default;
};

// Shared token-id space: DC categories, then AC (run, category), then EOB and ZRL.
inline constexpr SymbolId kFirstAcToken = kMaxCategory + 1;
inline constexpr SymbolId kEobToken = kFirstAcToken + 16 * kMaxCategory;
inline constexpr SymbolId kZrlToken = kEobToken + 1;
inline constexpr SymbolId kNumTokens = kZrlToken + 1;

inline SymbolId token_id(const RunCategorySymbol& s) {
    switch (s.flavor) {
    case TokenFlavor::DC:
        if (s.category < 0 || s.category > kMaxCategory || s.run != 0) break;
        return static_cast<SymbolId>(s.category);
    case TokenFlavor::AC:
        if (s.run < 0 || s.run > 15 || s.category < 1 || s.category > kMaxCategory) break;
        return kFirstAcToken + static_cast<SymbolId>(s.run * kMaxCategory + s.category - 1);
    case TokenFlavor::EOB: return kEobToken;
    case TokenFlavor::ZRL: return kZrlToken;
    }
    throw InvalidArgument("invalid run/category symbol");
}

inline RunCategorySymbol token_from_id(SymbolId id) {
    if (id < kFirstAcToken) return RunCategorySymbol::dc(static_cast<int>(id));
    if (id < kEobToken) {
        const auto k = static_cast<int>(id - kFirstAcToken);
        return RunCategorySymbol::ac(k / kMaxCategory, k % kMaxCategory + 1);
    }
    if (id == kEobToken) return RunCategorySymbol::eob();
    if (id == kZrlToken) return RunCategorySymbol::zrl();
    throw InvalidArgument("token id " + std::to_string(id) + " out of range");
}

/// Magnitude category: c such that 2^(c-1) <= |v| < 2^c, 0 for v == 0.
inline int magnitude_category(std::int32_t v) {
    const auto mag = static_cast<std::uint32_t>(std::abs(v));
    const int c = static_cast<int>(std::bit_width(mag));
    if (c > kMaxCategory) throw InvalidArgument("coefficient magnitude " + std::to_string(v) + " exceeds 2^11 - 1");
    return c;
}

struct TokenValue {
    RunCategorySymbol symbol;
    std::int32_t value = 0;  // meaningful when symbol.category > 0

    bool operator==(const TokenValue&) const = default;
};

struct BlockTokens {
    std::vector<TokenValue> tokens;
    std::int32_t dc = 0;  // quantized DC, the next block's predictor
};

inline BlockTokens block_to_symbols(const QuantizedBlock& b, std::int32_t prev_dc) {
    BlockTokens out;
    const std::int32_t diff = b[0] - prev_dc;
    out.tokens.push_back({RunCategorySymbol::dc(magnitude_category(diff)), diff});
    out.dc = b[0];

    int run = 0;
    for (std::size_t k = 1; k < 64; ++k) {
        const auto v = b[kZigzag[k]];
        if (v == 0) {
            ++run;
            continue;
        }
        for (; run > 15; run -= 16) out.tokens.push_back({RunCategorySymbol::zrl(), 0});
        out.tokens.push_back({RunCategorySymbol::ac(run, magnitude_category(v)), v});
        run = 0;
    }
    if (run > 0) out.tokens.push_back({RunCategorySymbol::eob(), 0});
    return out;
}

/// Inverse of block_to_symbols; throws InvalidArgument on an impossible token sequence.
inline QuantizedBlock symbols_to_block(const std::vector<TokenValue>& tokens, std::int32_t prev_dc) {
    QuantizedBlock b{};
    if (tokens.empty() || tokens.front().symbol.flavor != TokenFlavor::DC)
        throw InvalidArgument("block must start with a DC token");
    b[0] = prev_dc + tokens.front().value;
    std::size_t pos = 1;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (pos >= 64) throw InvalidArgument("tokens past end of block");
        switch (t.symbol.flavor) {
        case TokenFlavor::EOB:
            if (i + 1 != tokens.size()) throw InvalidArgument("EOB must be the last token");
            return b;
        case TokenFlavor::ZRL:
            pos += 16;
            if (pos >= 64) throw InvalidArgument("ZRL runs past end of block");
            break;
        case TokenFlavor::AC:
            pos += static_cast<std::size_t>(t.symbol.run);
            if (pos >= 64) throw InvalidArgument("AC run past end of block");
            b[kZigzag[pos++]] = t.value;
            break;
        case TokenFlavor::DC: throw InvalidArgument("unexpected DC token inside block");
        }
    }
    return b;
}

} // namespace dnarot
