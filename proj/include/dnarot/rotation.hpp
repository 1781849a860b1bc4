#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "dnarot/codebook.hpp"
#include "dnarot/error.hpp"
#include "dnarot/nucleotide.hpp"

namespace dnarot {

inline constexpr std::size_t kNumCodes = 4;

/// Shifts every letter k steps along the cycle A -> T -> C -> G -> A.
inline Codeword switch_letters(const Codeword& cw, unsigned k) {
    if (k >= kNumCodes) throw InvalidArgument("rotation index must be in 0..3, got " + std::to_string(k));
    std::string out = cw.str();
    for (auto& c : out) c = kNucleotideLetters[(index_of(*from_char(c)) + k) % kNumCodes];
    return Codeword(std::move(out));
}

inline Codebook switch_letters(const Codebook& cb, unsigned k) {
    Codebook::Map rotated;
    for (const auto& [id, cw] : cb) rotated.emplace(id, switch_letters(cw, k));
    return Codebook(std::move(rotated));
}

/// The input codebook plus its three letter-rotated variants.
class RotationSet {
public:
    const Codebook& operator[](std::size_t k) const { return codes_.at(k); }
    const Codebook& base() const noexcept { return codes_[0]; }
    const std::array<Codebook, kNumCodes>& codes() const noexcept { return codes_; }

    friend RotationSet generate_codes(const Codebook& input);

private:
    std::array<Codebook, kNumCodes> codes_;
};

inline RotationSet generate_codes(const Codebook& input) {
    if (!validate_prefix_free(input)) throw InvalidArgument("input codebook is not prefix-free");
    RotationSet rs;
    rs.codes_[0] = input;
    for (unsigned k = 1; k < kNumCodes; ++k) rs.codes_[k] = switch_letters(input, k);
    return rs;
}

enum class ScheduleKind : std::uint8_t { None = 0, RoundRobin = 1, PseudoRandom = 2 };

struct ScheduleMode {
    ScheduleKind kind = ScheduleKind::None;
    std::uint64_t seed = 0;

    static constexpr ScheduleMode none() noexcept { return {ScheduleKind::None, 0}; }
    static constexpr ScheduleMode round_robin() noexcept { return {ScheduleKind::RoundRobin, 0}; }
    static constexpr ScheduleMode pseudo_random(std::uint64_t seed) noexcept {
        return {ScheduleKind::PseudoRandom, seed};
    }

    bool operator==(const ScheduleMode&) const = default;
};

inline const char* to_string(ScheduleKind k) noexcept {
    switch (k) {
    case ScheduleKind::None: return "none";
    case ScheduleKind::RoundRobin: return "roundrobin";
    case ScheduleKind::PseudoRandom: return "random";
    }
    return "?";
}

/// Deterministic code-index generator shared (by construction) between encoder
/// and decoder. PseudoRandom uses xorshift64 and takes the top two bits.
class Scheduler {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    explicit Scheduler(ScheduleMode mode = ScheduleMode::none()) : mode_(mode) { reset_for_row(0); }

    const ScheduleMode& mode() const noexcept { return mode_; }
    std::uint64_t counter() const noexcept { return counter_; }
    std::uint64_t prng_state() const noexcept { return state_; }

    unsigned next_code() noexcept {
        switch (mode_.kind) {
        case ScheduleKind::None:
            return 0;
        case ScheduleKind::RoundRobin:
            return static_cast<unsigned>(counter_++ % kNumCodes);
        case ScheduleKind::PseudoRandom:
            state_ ^= state_ << 13;
            state_ ^= state_ >> 7;
            state_ ^= state_ << 17;
            ++counter_;
            return static_cast<unsigned>(state_ >> 62);
        }
        return 0;
    }

    void reset_for_row(std::uint64_t row_index) noexcept {
        counter_ = 0;
        state_ = 0;
        if (mode_.kind == ScheduleKind::PseudoRandom) {
            state_ = mode_.seed ^ (row_index * kGolden);
            if (state_ == 0) state_ = kGolden;
        }
    }

private:
    ScheduleMode mode_;
    std::uint64_t counter_ = 0;
    std::uint64_t state_ = 0;
};

} // namespace dnarot
