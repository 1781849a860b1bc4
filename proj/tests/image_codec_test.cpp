#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "dnarot/image_codec.hpp"
#include "test_support.hpp"

using namespace dnarot;

namespace {

const std::array<ScheduleMode, 3> kModes = {ScheduleMode::none(), ScheduleMode::round_robin(),
                                            ScheduleMode::pseudo_random(7)};

std::vector<TokenValue> toks(std::initializer_list<TokenValue> l) { return l; }

} // namespace

TEST(Dct, ConstantBlockHasOnlyDc) {
    CoefficientBlock b{};
    b.fill(128.0 - 128.0);
    for (auto c : dct8_forward(b)) EXPECT_NEAR(c, 0.0, 1e-9);
    b.fill(10.0);
    const auto c = dct8_forward(b);
    EXPECT_NEAR(c[0], 80.0, 1e-9);  // 8 * mean for the orthonormal transform
    for (std::size_t i = 1; i < 64; ++i) EXPECT_NEAR(c[i], 0.0, 1e-9);
}

TEST(Dct, ImpulseRoundTripsWithinOne) {
    for (std::size_t pos = 0; pos < 64; ++pos) {
        CoefficientBlock b{};
        b.fill(-128.0);
        b[pos] = 127.0;
        const auto back = dct8_inverse(dct8_forward(b));
        for (std::size_t i = 0; i < 64; ++i) EXPECT_LE(std::abs(std::round(back[i]) - b[i]), 1.0);
    }
}

TEST(Dct, Parseval) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-128.0, 127.0);
    for (int trial = 0; trial < 100; ++trial) {
        CoefficientBlock b{};
        for (auto& v : b) v = d(rng);
        const auto c = dct8_forward(b);
        double es = 0, ec = 0;
        for (std::size_t i = 0; i < 64; ++i) {
            es += b[i] * b[i];
            ec += c[i] * c[i];
        }
        EXPECT_NEAR(ec / es, 1.0, 1e-6);
    }
}

TEST(Quantization, QualityScaling) {
    const auto q50 = QuantizationSpec::for_quality(50);
    EXPECT_EQ(q50.table, QuantizationSpec::kBaseLuma);
    const auto q100 = QuantizationSpec::for_quality(100);
    for (auto v : q100.table) EXPECT_EQ(v, 1);
    const auto q10 = QuantizationSpec::for_quality(10);
    EXPECT_EQ(q10.table[0], 80);  // 16 * 500 / 100
    EXPECT_THROW(QuantizationSpec::for_quality(0), InvalidArgument);
    EXPECT_THROW(QuantizationSpec::for_quality(101), InvalidArgument);
}

TEST(Quantization, RoundsHalfAwayFromZero) {
    QuantizationSpec q;
    q.table.fill(16);
    CoefficientBlock c{};
    c[0] = 17;
    c[1] = -24;
    c[2] = 24;
    c[3] = 0;
    const auto lv = quantize(c, q);
    EXPECT_EQ(lv[0], 1);
    EXPECT_EQ(lv[1], -2);
    EXPECT_EQ(lv[2], 2);
    EXPECT_EQ(lv[3], 0);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-900, 900);
    const auto spec = QuantizationSpec::for_quality(30);
    for (int trial = 0; trial < 100; ++trial) {
        CoefficientBlock x{};
        for (auto& v : x) v = d(rng);
        const auto back = dequantize(quantize(x, spec), spec);
        for (std::size_t i = 0; i < 64; ++i) EXPECT_LE(std::abs(back[i] - x[i]), spec.table[i] / 2.0 + 1e-9);
    }
}

TEST(Tokens, IdsArePartitionedAndInvertible) {
    std::set<SymbolId> seen;
    for (SymbolId id = 0; id < kNumTokens; ++id) {
        const auto s = token_from_id(id);
        EXPECT_EQ(token_id(s), id);
        seen.insert(id);
    }
    EXPECT_EQ(token_id(RunCategorySymbol::eob()), kEobToken);
    EXPECT_EQ(token_id(RunCategorySymbol::zrl()), kZrlToken);
    EXPECT_THROW(token_id(RunCategorySymbol::ac(0, 0)), InvalidArgument);
    EXPECT_THROW(token_from_id(kNumTokens), InvalidArgument);
}

TEST(Tokens, MagnitudeCategory) {
    EXPECT_EQ(magnitude_category(0), 0);
    EXPECT_EQ(magnitude_category(1), 1);
    EXPECT_EQ(magnitude_category(-1), 1);
    EXPECT_EQ(magnitude_category(5), 3);
    EXPECT_EQ(magnitude_category(-2047), 11);
    EXPECT_THROW(magnitude_category(2048), InvalidArgument);
}

TEST(Tokens, BlockExamples) {
    QuantizedBlock b{};
    EXPECT_EQ(block_to_symbols(b, 0).tokens, toks({{RunCategorySymbol::dc(0), 0}, {RunCategorySymbol::eob(), 0}}));

    b[kZigzag[4]] = 5;
    EXPECT_EQ(block_to_symbols(b, 0).tokens, toks({{RunCategorySymbol::dc(0), 0},
                                                   {RunCategorySymbol::ac(3, 3), 5},
                                                   {RunCategorySymbol::eob(), 0}}));

    QuantizedBlock z{};
    z[kZigzag[18]] = -1;
    EXPECT_EQ(block_to_symbols(z, 0).tokens, toks({{RunCategorySymbol::dc(0), 0},
                                                   {RunCategorySymbol::zrl(), 0},
                                                   {RunCategorySymbol::ac(1, 1), -1},
                                                   {RunCategorySymbol::eob(), 0}}));

    QuantizedBlock last{};
    last[0] = 7;
    last[kZigzag[63]] = 2;
    const auto t = block_to_symbols(last, 10);
    EXPECT_EQ(t.dc, 7);
    EXPECT_EQ(t.tokens.front(), (TokenValue{RunCategorySymbol::dc(2), -3}));
    EXPECT_EQ(t.tokens.back().symbol.flavor, TokenFlavor::AC);  // no EOB when coefficient 63 is set

    QuantizedBlock big{};
    big[1] = 4096;
    EXPECT_THROW(block_to_symbols(big, 0), InvalidArgument);
}

TEST(Tokens, RoundTripRandomBlocks) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> mag(-2047, 2047);
    for (int trial = 0; trial < 2000; ++trial) {
        QuantizedBlock b{};
        const int density = static_cast<int>(rng() % 64);
        for (auto& v : b)
            if (static_cast<int>(rng() % 64) < density) v = mag(rng) / static_cast<int>(1 + rng() % 200);
        b[0] = static_cast<std::int32_t>(rng() % 2000) - 1000;
        const std::int32_t prev = static_cast<std::int32_t>(rng() % 2000) - 1000;
        const auto t = block_to_symbols(b, prev);
        EXPECT_EQ(symbols_to_block(t.tokens, prev), b);
    }
}

TEST(ValueCode, Examples) {
    const auto& vc = build_value_code();
    EXPECT_EQ(FixedLengthValueCode::word_length(1), 1u);
    EXPECT_EQ(vc.words(1), (std::vector<std::string>{"A", "T"}));
    EXPECT_EQ(vc.encode(1, -1), "A");
    EXPECT_EQ(vc.encode(1, 1), "T");
    EXPECT_EQ(FixedLengthValueCode::word_length(3), 2u);
    EXPECT_EQ(vc.words(3).front(), "AT");
    EXPECT_EQ(vc.encode(3, -7), "AT");
    EXPECT_EQ(FixedLengthValueCode::word_length(11), 7u);
}

TEST(ValueCode, BijectiveAndConstrained) {
    const auto& vc = build_value_code();
    for (int c = 1; c <= kMaxCategory; ++c) {
        const auto& words = vc.words(c);
        const auto len = FixedLengthValueCode::word_length(c);
        ASSERT_EQ(words.size(), std::size_t{1} << c);
        // L(c) is the smallest length with enough constrained words.
        EXPECT_GE(4 * std::pow(3.0, static_cast<double>(len) - 1), std::pow(2.0, c));
        if (len > 1) {
            EXPECT_LT(4 * std::pow(3.0, static_cast<double>(len) - 2), std::pow(2.0, c));
        }
        EXPECT_TRUE(std::is_sorted(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
            const auto rank = [](char ch) { return kNucleotideLetters.find(ch); };
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                [&](char x, char y) { return rank(x) < rank(y); });
        }));
        std::set<std::string> distinct(words.begin(), words.end());
        EXPECT_EQ(distinct.size(), words.size());
        const std::int32_t lo = 1 << (c - 1), hi = (1 << c) - 1;
        std::int32_t prev_index = -1;
        for (std::int32_t v = -hi; v <= hi; ++v) {
            if (v > -lo && v < lo) continue;
            const auto& w = vc.encode(c, v);
            EXPECT_EQ(w.size(), len);
            for (std::size_t i = 1; i < w.size(); ++i) EXPECT_NE(w[i], w[i - 1]);
            std::size_t pos = 0;
            EXPECT_EQ(vc.decode(c, w, pos), v);
            EXPECT_EQ(pos, len);
            const auto idx = static_cast<std::int32_t>(FixedLengthValueCode::value_index(c, v));
            EXPECT_EQ(idx, prev_index + 1);  // negatives ascending, then positives
            prev_index = idx;
        }
    }
    EXPECT_THROW(vc.encode(2, 1), InvalidArgument);
    std::size_t pos = 0;
    EXPECT_THROW(vc.decode(3, "GC", pos), DecodeError);  // valid word shape, beyond the 8 used
}

TEST(Psnr, Examples) {
    const auto a = fixtures::gradient_image(16, 16);
    EXPECT_TRUE(std::isinf(psnr(a, a)));
    GrayImage flat(8, 8, 100), shifted(8, 8, 116);
    EXPECT_NEAR(psnr(flat, shifted), 10.0 * std::log10(255.0 * 255.0 / 256.0), 1e-12);
    EXPECT_NEAR(psnr(flat, shifted), 24.048, 1e-3);
    const auto n = fixtures::noise_image(16, 16, 1);
    EXPECT_DOUBLE_EQ(psnr(a, n), psnr(n, a));
    EXPECT_THROW(psnr(a, GrayImage(8, 16)), InvalidArgument);
}

TEST(Pgm, RoundTrip) {
    const auto img = fixtures::noise_image(13, 7, 5);
    std::stringstream buf;
    write_pgm(img, buf);
    EXPECT_EQ(read_pgm(buf), img);
    std::istringstream comment("P5\n# made by hand\n2 1\n255\nAB");
    const auto small = read_pgm(comment);
    EXPECT_EQ(small.pixels, (std::vector<std::uint8_t>{'A', 'B'}));
    std::istringstream p2("P2\n1 1\n255\n0\n");
    EXPECT_THROW(read_pgm(p2), ParseError);
    std::istringstream short_raster("P5\n4 4\n255\nAB");
    EXPECT_THROW(read_pgm(short_raster), ParseError);
}

TEST(ImageHeader, RoundTrip) {
    ImageHeader h;
    h.width = 641;
    h.height = 17;
    h.quality = 37;
    h.mode = ScheduleMode::pseudo_random(99);
    h.n_blocks = static_cast<std::uint32_t>(h.blocks_x() * h.blocks_y());
    h.histogram = {{0, 5}, {kEobToken, 1000}, {kZrlToken, 3}};
    const auto ns = serialize_header(h);
    EXPECT_EQ(parse_header(ns), h);
    auto bad = ns;
    bad[0] = bad[0] == 'A' ? 'T' : 'A';
    EXPECT_THROW(parse_header(bad), DecodeError);
    EXPECT_THROW(parse_header(ns.substr(0, ns.size() - 1)), DecodeError);
}

TEST(ImageCodec, ConstantImageIsOneBlockOfTwoTokens) {
    const GrayImage img(8, 8, 128);
    const auto q = QuantizationSpec::for_quality(50);
    const auto blocks = quantized_blocks(img, q);
    ASSERT_EQ(blocks.size(), 1u);
    const auto t = tokenize_blocks(blocks, 1);
    EXPECT_EQ(t[0].tokens, toks({{RunCategorySymbol::dc(0), 0}, {RunCategorySymbol::eob(), 0}}));
    const auto enc = encode_image(img, 50, ScheduleMode::none());
    EXPECT_EQ(decode_image(enc.payload, enc.header), img);
}

TEST(ImageCodec, RoundRobinResetsEveryBlockRow) {
    const auto img = fixtures::gradient_image(16, 16);
    EXPECT_EQ(encode_image(img, 50, ScheduleMode::round_robin()).block_codes,
              (std::vector<std::uint8_t>{0, 1, 0, 1}));
    const auto wide = fixtures::gradient_image(48, 16);
    EXPECT_EQ(encode_image(wide, 50, ScheduleMode::round_robin()).block_codes,
              (std::vector<std::uint8_t>{0, 1, 2, 3, 0, 1, 0, 1, 2, 3, 0, 1}));
    EXPECT_EQ(encode_image(wide, 50, ScheduleMode::none()).block_codes, std::vector<std::uint8_t>(12, 0));
}

TEST(ImageCodec, RateAndReconstructionInvariantAcrossModes) {
    const std::vector<GrayImage> images = {fixtures::gradient_image(40, 24), fixtures::noise_image(32, 32, 9),
                                           fixtures::shapes_image(64, 48)};
    for (const auto& img : images) {
        for (int quality : {10, 50, 90}) {
            const auto base = encode_image(img, quality, ScheduleMode::none());
            const auto base_img = decode_image(base.payload, base.header);
            for (const auto& mode : kModes) {
                const auto enc = encode_image(img, quality, mode);
                EXPECT_EQ(enc.payload.size(), base.payload.size());
                EXPECT_EQ(decode_image(enc.payload, enc.header), base_img);
            }
        }
    }
}

TEST(ImageCodec, DecodeMatchesDirectReconstruction) {
    const auto img = fixtures::shapes_image(37, 29);  // not a multiple of 8
    const auto enc = encode_image(img, 75, ScheduleMode::pseudo_random(3));
    const auto q = QuantizationSpec::for_quality(75);
    EXPECT_EQ(decode_image(enc.payload, enc.header), reconstruct(quantized_blocks(img, q), enc.info));
}

TEST(ImageCodec, HighQualityGradientIsSharp) {
    const auto img = fixtures::gradient_image(64, 64);
    const auto enc = encode_image(img, 100, ScheduleMode::round_robin());
    EXPECT_GT(psnr(img, decode_image(enc.payload, enc.header)), 40.0);
}

TEST(ImageCodec, ValueCodewordsAreNeverRotated) {
    const auto img = fixtures::shapes_image(64, 64);
    const auto plain = encode_image(img, 60, ScheduleMode::none());
    const auto rotated = encode_image(img, 60, ScheduleMode::round_robin());
    const auto base = token_codebook(plain.info.histogram);
    const auto& vc = build_value_code();
    const auto tokens = tokenize_blocks(quantized_blocks(img, QuantizationSpec::for_quality(60)), 8);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < tokens.size(); ++b) {
        const unsigned k = rotated.block_codes[b];
        for (const auto& t : tokens[b].tokens) {
            const auto& cw = base.at(token_id(t.symbol));
            EXPECT_EQ(rotated.payload.substr(pos, cw.size()), switch_letters(cw, k).str());
            EXPECT_EQ(plain.payload.substr(pos, cw.size()), cw.str());
            pos += cw.size();
            if (t.symbol.category > 0) {
                const auto& w = vc.encode(t.symbol.category, t.value);
                EXPECT_EQ(rotated.payload.substr(pos, w.size()), w);
                EXPECT_EQ(plain.payload.substr(pos, w.size()), w);
                pos += w.size();
            }
        }
    }
    EXPECT_EQ(pos, rotated.payload.size());
}

TEST(ImageCodec, TamperingIsLocalizedToLaterRows) {
    const auto img = fixtures::shapes_image(64, 64);
    const auto enc = encode_image(img, 50, ScheduleMode::round_robin());
    const auto clean = decode_image(enc.payload, enc.header);
    // Locate the first nucleotide of block row 3 by decoding rows 0..2.
    ImageHeader three_rows = enc.info;
    three_rows.height = 24;
    three_rows.n_blocks = 24;
    std::size_t row3 = 0;
    for (std::size_t cut = 0; cut <= enc.payload.size(); ++cut) {
        try {
            decode_blocks(std::string_view(enc.payload).substr(0, cut), three_rows);
            row3 = cut;
            break;
        } catch (const DecodeError&) {
        }
    }
    ASSERT_GT(row3, 0u);
    for (std::size_t offset : {row3, row3 + 5, row3 + 17}) {
        auto bad = enc.payload;
        bad[offset] = bad[offset] == 'A' ? 'G' : 'A';
        try {
            const auto out = decode_image(bad, enc.header);
            for (std::size_t y = 0; y < 24; ++y)
                for (std::size_t x = 0; x < 64; ++x) ASSERT_EQ(out.at(x, y), clean.at(x, y));
        } catch (const ImageDecodeError& e) {
            EXPECT_GE(e.block_row(), 3u);
            EXPECT_GE(e.offset(), row3);
        }
    }
}

TEST(ImageCodec, TruncatedPayloadFails) {
    const auto img = fixtures::shapes_image(32, 32);
    const auto enc = encode_image(img, 50, ScheduleMode::round_robin());
    EXPECT_THROW(decode_image(enc.payload.substr(0, enc.payload.size() - 3), enc.header), ImageDecodeError);
    EXPECT_THROW(decode_image(enc.payload + "ACGT", enc.header), ImageDecodeError);
}
