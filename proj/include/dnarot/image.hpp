#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <string>
#include <vector>

#include "dnarot/error.hpp"

namespace dnarot {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0) : width(w), height(h), pixels(w * h, fill) {}

    std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }

    bool operator==(const GrayImage&) const = default;
};

/// Peak signal-to-noise ratio for 8-bit samples; +inf for identical images.
inline double psnr(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) throw InvalidArgument("psnr: image dimensions differ");
    if (a.pixels.empty()) throw InvalidArgument("psnr: empty image");
    double sse = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sse += d * d;
    }
    if (sse == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.pixels.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace detail {

inline void skip_pgm_space(std::istream& in) {
    for (;;) {
        const int c = in.peek();
        if (c == '#') {
            std::string comment;
            std::getline(in, comment);
        } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in.get();
        } else {
            return;
        }
    }
}

inline std::size_t read_pgm_number(std::istream& in) {
    skip_pgm_space(in);
    std::size_t v = 0;
    if (!(in >> v)) throw ParseError("malformed PGM header");
    return v;
}

} // namespace detail

/// Binary PGM (P5) with maxval 255.
inline GrayImage read_pgm(std::istream& in) {
    char magic[2] = {};
    if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') throw ParseError("not a binary PGM (P5) file");
    const auto w = detail::read_pgm_number(in);
    const auto h = detail::read_pgm_number(in);
    const auto maxval = detail::read_pgm_number(in);
    if (w == 0 || h == 0) throw ParseError("PGM has zero width or height");
    if (maxval != 255) throw ParseError("only 8-bit PGM (maxval 255) is supported");
    in.get();  // single whitespace before raster
    GrayImage img(w, h);
    if (!in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size())))
        throw ParseError("PGM raster truncated");
    return img;
}

inline GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_pgm(in);
}

inline void write_pgm(const GrayImage& img, std::ostream& out) {
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    write_pgm(img, out);
    if (!out) throw ParseError("write failed for " + path.string());
}

} // namespace dnarot
