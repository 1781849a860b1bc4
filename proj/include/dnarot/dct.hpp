#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>

#include "dnarot/error.hpp"

namespace dnarot {

/// 8x8 samples in row-major natural order (index = row * 8 + col).
template <typename T>
using Block = std::array<T, 64>;

using CoefficientBlock = Block<double>;
using QuantizedBlock = Block<std::int32_t>;

namespace detail {

template <std::floating_point T>
const std::array<std::array<T, 8>, 8>& dct_basis() {
    static const auto basis = [] {
        std::array<std::array<T, 8>, 8> m{};
        for (int u = 0; u < 8; ++u) {
            const T scale = u == 0 ? std::sqrt(T(1) / 8) : std::sqrt(T(2) / 8);
            for (int x = 0; x < 8; ++x)
                m[u][x] = scale * std::cos((2 * x + 1) * u * std::numbers::pi_v<T> / 16);
        }
        return m;
    }();
    return basis;
}

} // namespace detail

/// Orthonormal 2-D type-II DCT. Output index = v * 8 + u (v vertical frequency).
template <std::floating_point T>
Block<T> dct8_forward(const Block<T>& samples) {
    const auto& m = detail::dct_basis<T>();
    Block<T> tmp{};
    Block<T> out{};
    for (int y = 0; y < 8; ++y)
        for (int u = 0; u < 8; ++u) {
            T acc = 0;
            for (int x = 0; x < 8; ++x) acc += m[u][x] * samples[y * 8 + x];
            tmp[y * 8 + u] = acc;
        }
    for (int v = 0; v < 8; ++v)
        for (int u = 0; u < 8; ++u) {
            T acc = 0;
            for (int y = 0; y < 8; ++y) acc += m[v][y] * tmp[y * 8 + u];
            out[v * 8 + u] = acc;
        }
    return out;
}

template <std::floating_point T>
Block<T> dct8_inverse(const Block<T>& coefs) {
    const auto& m = detail::dct_basis<T>();
    Block<T> tmp{};
    Block<T> out{};
    for (int v = 0; v < 8; ++v)
        for (int x = 0; x < 8; ++x) {
            T acc = 0;
            for (int u = 0; u < 8; ++u) acc += m[u][x] * coefs[v * 8 + u];
            tmp[v * 8 + x] = acc;
        }
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            T acc = 0;
            for (int v = 0; v < 8; ++v) acc += m[v][y] * tmp[v * 8 + x];
            out[y * 8 + x] = acc;
        }
    return out;
}

/// Luminance quantization table scaled to a 1..100 quality factor.
struct QuantizationSpec {
    Block<std::int32_t> table{};
    int quality = 50;

    static constexpr Block<std::int32_t> kBaseLuma = {
        16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
        14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
        18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
        49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};

    static QuantizationSpec for_quality(int quality) {
        if (quality < 1 || quality > 100) throw InvalidArgument("quality must be in 1..100");
        const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
        QuantizationSpec q;
        q.quality = quality;
        for (std::size_t i = 0; i < 64; ++i) q.table[i] = std::max(1, (kBaseLuma[i] * scale + 50) / 100);
        return q;
    }
};

/// Round-half-away-from-zero division by the table step.
inline QuantizedBlock quantize(const CoefficientBlock& coefs, const QuantizationSpec& q) {
    QuantizedBlock out{};
    for (std::size_t i = 0; i < 64; ++i)
        out[i] = static_cast<std::int32_t>(std::lround(coefs[i] / static_cast<double>(q.table[i])));
    return out;
}

inline CoefficientBlock dequantize(const QuantizedBlock& levels, const QuantizationSpec& q) {
    CoefficientBlock out{};
    for (std::size_t i = 0; i < 64; ++i) out[i] = static_cast<double>(levels[i]) * q.table[i];
    return out;
}

} // namespace dnarot
