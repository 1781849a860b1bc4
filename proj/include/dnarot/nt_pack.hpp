#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dnarot/error.hpp"
#include "dnarot/nucleotide.hpp"

namespace dnarot {

/// Fixed-width unsigned fields packed two bits per nucleotide, most significant first.
class NucleotideWriter {
public:
    void put(std::uint64_t value, unsigned bits) {
        if (bits == 0 || bits > 64 || bits % 2 != 0) throw InvalidArgument("field width must be even, 2..64");
        if (bits < 64 && (value >> bits) != 0)
            throw InvalidArgument("value " + std::to_string(value) + " does not fit in " + std::to_string(bits) +
                                  " bits");
        for (int shift = static_cast<int>(bits) - 2; shift >= 0; shift -= 2)
            out_.push_back(kNucleotideLetters[(value >> shift) & 0x3]);
    }

    const std::string& str() const noexcept { return out_; }
    std::string take() noexcept { return std::move(out_); }

private:
    std::string out_;
};

class NucleotideReader {
public:
    explicit NucleotideReader(std::string_view ns) : ns_(ns) {}

    std::uint64_t get(unsigned bits) {
        if (bits == 0 || bits > 64 || bits % 2 != 0) throw InvalidArgument("field width must be even, 2..64");
        std::uint64_t v = 0;
        for (unsigned i = 0; i < bits / 2; ++i) {
            if (pos_ >= ns_.size()) throw DecodeError("header truncated", pos_);
            const auto nt = from_char(ns_[pos_]);
            if (!nt) throw DecodeError("invalid nucleotide in header", pos_);
            v = (v << 2) | index_of(*nt);
            ++pos_;
        }
        return v;
    }

    std::size_t position() const noexcept { return pos_; }
    bool at_end() const noexcept { return pos_ == ns_.size(); }

private:
    std::string_view ns_;
    std::size_t pos_ = 0;
};

} // namespace dnarot
