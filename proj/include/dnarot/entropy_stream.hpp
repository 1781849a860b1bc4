#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnarot/codebook.hpp"
#include "dnarot/error.hpp"
#include "dnarot/nt_pack.hpp"
#include "dnarot/rotation.hpp"

namespace dnarot {

using NucleotideStream = std::string;

/// Quaternary trie over a prefix-free codebook.
class PrefixTrie {
public:
    explicit PrefixTrie(const Codebook& cb) {
        nodes_.emplace_back();
        for (const auto& [id, cw] : cb) {
            std::size_t cur = 0;
            for (std::size_t i = 0; i < cw.size(); ++i) {
                if (nodes_[cur].symbol) throw InvalidArgument("codebook is not prefix-free");
                auto& child = nodes_[cur].next[index_of(cw[i])];
                if (child == kNone) {
                    child = static_cast<std::int32_t>(nodes_.size());
                    nodes_.emplace_back();
                }
                cur = static_cast<std::size_t>(nodes_[cur].next[index_of(cw[i])]);
            }
            if (nodes_[cur].symbol || nodes_[cur].has_children())
                throw InvalidArgument("codebook is not prefix-free");
            nodes_[cur].symbol = id;
        }
    }

    /// Reads one codeword starting at pos and advances pos past it.
    SymbolId decode_one(std::string_view ns, std::size_t& pos) const {
        const std::size_t start = pos;
        std::size_t cur = 0;
        while (!nodes_[cur].symbol) {
            if (pos >= ns.size()) throw DecodeError("stream ends inside a codeword", start);
            const auto nt = from_char(ns[pos]);
            if (!nt) throw DecodeError("invalid nucleotide", pos);
            const auto next = nodes_[cur].next[index_of(*nt)];
            if (next == kNone) throw DecodeError("no codeword matches", pos);
            cur = static_cast<std::size_t>(next);
            ++pos;
        }
        return *nodes_[cur].symbol;
    }

private:
    static constexpr std::int32_t kNone = -1;

    struct Node {
        std::array<std::int32_t, 4> next{kNone, kNone, kNone, kNone};
        std::optional<SymbolId> symbol;

        bool has_children() const noexcept {
            for (auto n : next)
                if (n != kNone) return true;
            return false;
        }
    };

    std::vector<Node> nodes_;
};

/// One trie per rotated codebook.
class RotatingDecoder {
public:
    explicit RotatingDecoder(const RotationSet& rs)
        : tries_{PrefixTrie(rs[0]), PrefixTrie(rs[1]), PrefixTrie(rs[2]), PrefixTrie(rs[3])} {}

    SymbolId decode_one(unsigned code, std::string_view ns, std::size_t& pos) const {
        return tries_.at(code).decode_one(ns, pos);
    }

private:
    std::array<PrefixTrie, kNumCodes> tries_;
};

/// Appends the code-k codeword of each symbol, drawing a new code index from
/// the scheduler before symbol 0 and after every fragment_len symbols.
inline void encode_stream_into(std::span<const SymbolId> src, const RotationSet& rs, Scheduler& st,
                               std::size_t fragment_len, NucleotideStream& out) {
    if (fragment_len == 0) throw InvalidArgument("fragment length must be positive");
    unsigned code = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (i % fragment_len == 0) code = st.next_code();
        const auto* cw = rs[code].find(src[i]);
        if (cw == nullptr)
            throw CoverageError("symbol " + std::to_string(src[i]) + " at position " + std::to_string(i) +
                                    " has no codeword",
                                i);
        out += cw->str();
    }
}

inline NucleotideStream encode_stream(std::span<const SymbolId> src, const RotationSet& rs, Scheduler& st,
                                      std::size_t fragment_len) {
    NucleotideStream out;
    encode_stream_into(src, rs, st, fragment_len, out);
    return out;
}

/// Inverse of encode_stream. The scheduler must be in the same state the
/// encoder's was; nothing in the stream resynchronizes a mismatch.
inline std::vector<SymbolId> decode_stream(std::string_view ns, const RotationSet& rs, Scheduler& st,
                                           std::size_t fragment_len, std::size_t n_symbols) {
    if (fragment_len == 0) throw InvalidArgument("fragment length must be positive");
    const RotatingDecoder decoder(rs);
    std::vector<SymbolId> out;
    out.reserve(n_symbols);
    std::size_t pos = 0;
    unsigned code = 0;
    for (std::size_t i = 0; i < n_symbols; ++i) {
        if (i % fragment_len == 0) code = st.next_code();
        out.push_back(decoder.decode_one(code, ns, pos));
    }
    if (pos != ns.size()) throw DecodeError("trailing nucleotides after last symbol", pos);
    return out;
}

} // namespace dnarot

namespace dnarot {

/// Header for plain symbol streams (no image). Same packing as the image header:
///   magic 32 | mode 8 | seed 64 | fragment length 32 | symbol count 64
struct StreamHeader {
    static constexpr std::uint32_t kMagic = 0x444E4153;  // "DNAS"

    ScheduleMode mode;
    std::uint32_t fragment_len = 6;
    std::uint64_t n_symbols = 0;

    bool operator==(const StreamHeader&) const = default;
};

} // namespace dnarot

namespace dnarot {

inline std::string serialize_stream_header(const StreamHeader& h) {
    NucleotideWriter w;
    w.put(StreamHeader::kMagic, 32);
    w.put(static_cast<std::uint64_t>(h.mode.kind), 8);
    w.put(h.mode.seed, 64);
    w.put(h.fragment_len, 32);
    w.put(h.n_symbols, 64);
    return w.take();
}

inline StreamHeader parse_stream_header(std::string_view ns) {
    NucleotideReader r(ns);
    if (r.get(32) != StreamHeader::kMagic) throw DecodeError("bad stream header magic", 0);
    StreamHeader h;
    const auto kind = r.get(8);
    if (kind > 2) throw DecodeError("unknown schedule mode in header", 4 * 4);
    h.mode.kind = static_cast<ScheduleKind>(kind);
    h.mode.seed = r.get(64);
    h.fragment_len = static_cast<std::uint32_t>(r.get(32));
    if (h.fragment_len == 0) throw DecodeError("zero fragment length in header", r.position());
    h.n_symbols = r.get(64);
    if (!r.at_end()) throw DecodeError("trailing nucleotides after header", r.position());
    return h;
}

} // namespace dnarot
