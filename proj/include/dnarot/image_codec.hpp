#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dnarot/codebook.hpp"
#include "dnarot/dct.hpp"
#include "dnarot/entropy_stream.hpp"
#include "dnarot/error.hpp"
#include "dnarot/image.hpp"
#include "dnarot/nt_pack.hpp"
#include "dnarot/rotation.hpp"
#include "dnarot/tokens.hpp"
#include "dnarot/value_code.hpp"

namespace dnarot {

/// Decode failure localized to a block (row, column in block units).
class ImageDecodeError : public DecodeError {
public:
    ImageDecodeError(const std::string& what, std::size_t offset, std::size_t block_row, std::size_t block_col)
        : DecodeError(what + " (block row " + std::to_string(block_row) + ", column " + std::to_string(block_col) +
                          ")",
                      offset),
          block_row_(block_row), block_col_(block_col) {}

    std::size_t block_row() const noexcept { return block_row_; }
    std::size_t block_col() const noexcept { return block_col_; }

private:
    std::size_t block_row_;
    std::size_t block_col_;
};

/// Everything the decoder needs besides the payload.
///
/// Nucleotide layout (2 bits per nucleotide, big-endian fields):
///   magic 32 | width 32 | height 32 | quality 8 | mode 8 | seed 64 |
///   n_blocks 32 | histogram length 16 | length x (token id 16, count 32)
struct ImageHeader {
    static constexpr std::uint32_t kMagic = 0x444E4149;  // "DNAI"

    std::uint32_t width = 0;
    std::uint32_t height = 0;
    int quality = 50;
    ScheduleMode mode;
    std::uint32_t n_blocks = 0;
    FrequencyTable histogram;

    std::size_t blocks_x() const noexcept { return (width + 7) / 8; }
    std::size_t blocks_y() const noexcept { return (height + 7) / 8; }

    bool operator==(const ImageHeader&) const = default;
};

inline std::string serialize_header(const ImageHeader& h) {
    NucleotideWriter w;
    w.put(ImageHeader::kMagic, 32);
    w.put(h.width, 32);
    w.put(h.height, 32);
    w.put(static_cast<std::uint64_t>(h.quality), 8);
    w.put(static_cast<std::uint64_t>(h.mode.kind), 8);
    w.put(h.mode.seed, 64);
    w.put(h.n_blocks, 32);
    std::size_t nonzero = 0;
    for (const auto& [id, count] : h.histogram) nonzero += count != 0;
    w.put(nonzero, 16);
    for (const auto& [id, count] : h.histogram) {
        if (count == 0) continue;
        if (count > UINT32_MAX) throw InvalidArgument("token count does not fit the header field");
        w.put(id, 16);
        w.put(count, 32);
    }
    return w.take();
}

inline ImageHeader parse_header(std::string_view ns) {
    NucleotideReader r(ns);
    if (r.get(32) != ImageHeader::kMagic) throw DecodeError("bad image header magic", 0);
    ImageHeader h;
    h.width = static_cast<std::uint32_t>(r.get(32));
    h.height = static_cast<std::uint32_t>(r.get(32));
    h.quality = static_cast<int>(r.get(8));
    const auto kind = r.get(8);
    h.mode.seed = r.get(64);
    h.n_blocks = static_cast<std::uint32_t>(r.get(32));
    const auto entries = r.get(16);
    for (std::uint64_t i = 0; i < entries; ++i) {
        const auto at = r.position();
        const auto id = static_cast<SymbolId>(r.get(16));
        const auto count = r.get(32);
        if (id >= kNumTokens || count == 0 || !h.histogram.emplace(id, count).second)
            throw DecodeError("invalid histogram entry", at);
    }
    if (!r.at_end()) throw DecodeError("trailing nucleotides after header", r.position());
    if (h.width == 0 || h.height == 0) throw DecodeError("zero image dimension in header", 0);
    if (h.quality < 1 || h.quality > 100) throw DecodeError("quality out of range in header", 0);
    if (kind > 2) throw DecodeError("unknown schedule mode in header", 0);
    h.mode.kind = static_cast<ScheduleKind>(kind);
    if (h.n_blocks != h.blocks_x() * h.blocks_y()) throw DecodeError("block count disagrees with dimensions", 0);
    return h;
}

struct EncodedImage {
    std::string header;         // serialize_header output
    NucleotideStream payload;   // block data only; quality statistics use this
    ImageHeader info;
    std::vector<std::uint8_t> block_codes;  // code index used for each block
};

/// Quantized DCT levels of every block, raster order, edge-replicated padding.
inline std::vector<QuantizedBlock> quantized_blocks(const GrayImage& img, const QuantizationSpec& q) {
    if (img.width == 0 || img.height == 0) throw InvalidArgument("image is empty");
    const std::size_t bx = (img.width + 7) / 8;
    const std::size_t by = (img.height + 7) / 8;
    std::vector<QuantizedBlock> out;
    out.reserve(bx * by);
    for (std::size_t r = 0; r < by; ++r)
        for (std::size_t c = 0; c < bx; ++c) {
            CoefficientBlock samples{};
            for (std::size_t y = 0; y < 8; ++y)
                for (std::size_t x = 0; x < 8; ++x) {
                    const auto sx = std::min(c * 8 + x, img.width - 1);
                    const auto sy = std::min(r * 8 + y, img.height - 1);
                    samples[y * 8 + x] = static_cast<double>(img.at(sx, sy)) - 128.0;
                }
            out.push_back(quantize(dct8_forward(samples), q));
        }
    return out;
}

/// Run/category tokens per block. DC prediction restarts at each block row.
inline std::vector<BlockTokens> tokenize_blocks(const std::vector<QuantizedBlock>& blocks, std::size_t blocks_x) {
    std::vector<BlockTokens> out;
    out.reserve(blocks.size());
    std::int32_t prev_dc = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i % blocks_x == 0) prev_dc = 0;
        out.push_back(block_to_symbols(blocks[i], prev_dc));
        prev_dc = out.back().dc;
    }
    return out;
}

inline FrequencyTable token_histogram(const std::vector<BlockTokens>& blocks) {
    FrequencyTable hist;
    for (const auto& b : blocks)
        for (const auto& t : b.tokens) ++hist[token_id(t.symbol)];
    return hist;
}

/// Codebook for an image's tokens. A single-token histogram gets a synthetic
/// second entry so the ternary construction is defined.
inline Codebook token_codebook(FrequencyTable hist) {
    std::size_t nonzero = 0;
    for (const auto& [id, count] : hist) nonzero += count != 0;
    if (nonzero < 2) {
        for (SymbolId id = 0; id < kNumTokens; ++id) {
            if (hist[id] == 0) {
                hist[id] = 1;
                break;
            }
        }
    }
    return build_huffman_goldman(hist);
}

/// Each block takes one code index from the scheduler; the scheduler is
/// reset at the first block of every row. Token codewords come from the
/// selected rotation and each is followed by its unrotated value codeword.
inline EncodedImage encode_image(const GrayImage& img, int quality, ScheduleMode mode) {
    const auto q = QuantizationSpec::for_quality(quality);
    const auto blocks = quantized_blocks(img, q);
    EncodedImage enc;
    enc.info.width = static_cast<std::uint32_t>(img.width);
    enc.info.height = static_cast<std::uint32_t>(img.height);
    enc.info.quality = quality;
    enc.info.mode = mode;
    enc.info.n_blocks = static_cast<std::uint32_t>(blocks.size());
    const auto bx = enc.info.blocks_x();
    const auto tokens = tokenize_blocks(blocks, bx);
    enc.info.histogram = token_histogram(tokens);
    const auto rs = generate_codes(token_codebook(enc.info.histogram));
    const auto& values = build_value_code();

    Scheduler sched(mode);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i % bx == 0) sched.reset_for_row(i / bx);
        const auto code = sched.next_code();
        enc.block_codes.push_back(static_cast<std::uint8_t>(code));
        const auto& book = rs[code];
        for (const auto& t : tokens[i].tokens) {
            enc.payload += book.at(token_id(t.symbol)).str();
            if (t.symbol.category > 0) enc.payload += values.encode(t.symbol.category, t.value);
        }
    }
    enc.header = serialize_header(enc.info);
    return enc;
}

/// Rebuilds the quantized blocks from the payload. Errors carry block coordinates.
inline std::vector<QuantizedBlock> decode_blocks(std::string_view payload, const ImageHeader& h) {
    const auto rs = generate_codes(token_codebook(h.histogram));
    const RotatingDecoder decoder(rs);
    const auto& values = build_value_code();
    const auto bx = h.blocks_x();

    std::vector<QuantizedBlock> blocks;
    blocks.reserve(h.n_blocks);
    Scheduler sched(h.mode);
    std::size_t pos = 0;
    std::int32_t prev_dc = 0;
    for (std::size_t i = 0; i < h.n_blocks; ++i) {
        const auto row = i / bx;
        const auto col = i % bx;
        if (col == 0) {
            sched.reset_for_row(row);
            prev_dc = 0;
        }
        const auto code = sched.next_code();
        const std::size_t block_start = pos;
        try {
            std::vector<TokenValue> tokens;
            std::size_t coef = 0;  // zigzag position of the next coefficient
            while (coef < 64) {
                const std::size_t at = pos;
                const auto sym = token_from_id(decoder.decode_one(code, payload, pos));
                if ((coef == 0) != (sym.flavor == TokenFlavor::DC))
                    throw DecodeError(coef == 0 ? "block does not start with a DC token" : "unexpected DC token",
                                      at);
                std::int32_t value = 0;
                if (sym.category > 0) value = values.decode(sym.category, payload, pos);
                tokens.push_back({sym, value});
                if (sym.flavor == TokenFlavor::EOB) break;
                if (sym.flavor == TokenFlavor::DC) coef = 1;
                else if (sym.flavor == TokenFlavor::ZRL) coef += 16;
                else coef += static_cast<std::size_t>(sym.run) + 1;
                if (coef > 64 || (sym.flavor == TokenFlavor::ZRL && coef >= 64))
                    throw DecodeError("run past end of block", at);
            }
            blocks.push_back(symbols_to_block(tokens, prev_dc));
            prev_dc = blocks.back()[0];
        } catch (const DecodeError& e) {
            throw ImageDecodeError(e.what(), e.offset(), row, col);
        } catch (const InvalidArgument& e) {
            throw ImageDecodeError(e.what(), block_start, row, col);
        }
    }
    if (pos != payload.size()) {
        const auto last = h.n_blocks - 1;
        throw ImageDecodeError("trailing nucleotides after last block", pos, last / bx, last % bx);
    }
    return blocks;
}

inline GrayImage reconstruct(const std::vector<QuantizedBlock>& blocks, const ImageHeader& h) {
    const auto q = QuantizationSpec::for_quality(h.quality);
    const auto bx = h.blocks_x();
    GrayImage img(h.width, h.height);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto samples = dct8_inverse(dequantize(blocks[i], q));
        const auto r = i / bx;
        const auto c = i % bx;
        for (std::size_t y = 0; y < 8; ++y)
            for (std::size_t x = 0; x < 8; ++x) {
                const auto px = c * 8 + x;
                const auto py = r * 8 + y;
                if (px >= h.width || py >= h.height) continue;
                const double v = std::round(samples[y * 8 + x] + 128.0);
                img.at(px, py) = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
            }
    }
    return img;
}

inline GrayImage decode_image(std::string_view payload, const ImageHeader& h) {
    return reconstruct(decode_blocks(payload, h), h);
}

inline GrayImage decode_image(std::string_view payload, std::string_view header) {
    return decode_image(payload, parse_header(header));
}

/// Payload nucleotides per pixel of the original image.
inline double nucleotides_per_pixel(const EncodedImage& enc) {
    return static_cast<double>(enc.payload.size()) / (static_cast<double>(enc.info.width) * enc.info.height);
}

} // namespace dnarot
