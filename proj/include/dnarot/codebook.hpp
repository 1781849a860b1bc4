#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dnarot/error.hpp"
#include "dnarot/nucleotide.hpp"

namespace dnarot {

using SymbolId = std::uint32_t;

/// A non-empty string over ACGT, at most kMaxLength letters.
class Codeword {
public:
    static constexpr std::size_t kMaxLength = 32;

    Codeword() = default;

    explicit Codeword(std::string letters) : letters_(std::move(letters)) {
        if (letters_.empty()) throw InvalidArgument("codeword must not be empty");
        if (letters_.size() > kMaxLength)
            throw InvalidArgument("codeword longer than " + std::to_string(kMaxLength) + " nucleotides");
        if (const auto bad = find_invalid_nucleotide(letters_); bad != std::string::npos)
            throw InvalidArgument(std::string("invalid nucleotide '") + letters_[bad] + "' in codeword");
    }

    explicit Codeword(const std::vector<Nucleotide>& nts) {
        std::string s;
        s.reserve(nts.size());
        for (auto n : nts) s.push_back(to_char(n));
        *this = Codeword(std::move(s));
    }

    std::size_t size() const noexcept { return letters_.size(); }
    Nucleotide operator[](std::size_t i) const noexcept { return *from_char(letters_[i]); }
    const std::string& str() const noexcept { return letters_; }

    auto operator<=>(const Codeword&) const = default;

private:
    std::string letters_;
};

inline std::ostream& operator<<(std::ostream& os, const Codeword& cw) { return os << cw.str(); }

/// Symbol -> codeword map. Prefix-freeness is checked separately by validate_prefix_free.
class Codebook {
public:
    using Map = std::map<SymbolId, Codeword>;

    Codebook() = default;

    explicit Codebook(Map entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw InvalidArgument("codebook must have at least one entry");
    }

    Codebook(std::initializer_list<std::pair<const SymbolId, std::string>> init) {
        for (const auto& [id, word] : init) {
            if (!entries_.emplace(id, Codeword(word)).second)
                throw InvalidArgument("duplicate symbol id " + std::to_string(id));
        }
        if (entries_.empty()) throw InvalidArgument("codebook must have at least one entry");
    }

    const Map& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool contains(SymbolId id) const { return entries_.contains(id); }

    const Codeword& at(SymbolId id) const {
        const auto it = entries_.find(id);
        if (it == entries_.end()) throw InvalidArgument("symbol " + std::to_string(id) + " not in codebook");
        return it->second;
    }

    const Codeword* find(SymbolId id) const noexcept {
        const auto it = entries_.find(id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    bool operator==(const Codebook&) const = default;

private:
    Map entries_;
};

using FrequencyTable = std::map<SymbolId, std::uint64_t>;

/// Exact non-negative fraction, always stored reduced.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t n, std::uint64_t d) {
        if (d == 0) throw InvalidArgument("zero denominator");
        const auto g = std::gcd(n, d);
        return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
    }

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    bool operator==(const Rational&) const = default;
    std::strong_ordering operator<=>(const Rational& o) const noexcept {
        const auto lhs = static_cast<unsigned __int128>(num) * o.den;
        const auto rhs = static_cast<unsigned __int128>(o.num) * den;
        return lhs <=> rhs;
    }
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.num << '/' << r.den;
}

/// True iff no codeword equals or is a proper prefix of another.
inline bool validate_prefix_free(const Codebook& cb) {
    std::vector<std::string_view> words;
    words.reserve(cb.size());
    for (const auto& [id, cw] : cb) words.emplace_back(cw.str());
    std::sort(words.begin(), words.end());
    // In lexicographic order a word is immediately followed by its extensions.
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].starts_with(words[i - 1])) return false;
    }
    return true;
}

/// Relabels a ternary digit string to nucleotides: digit t selects the t-th letter
/// (A<T<C<G order) among the three differing from the previous letter. The first
/// position uses A as its previous letter.
inline Codeword goldman_label(const std::vector<std::uint8_t>& trits) {
    std::string out;
    out.reserve(trits.size());
    Nucleotide prev = Nucleotide::A;
    for (const auto t : trits) {
        if (t > 2) throw InvalidArgument("trit out of range");
        std::uint8_t seen = 0;
        for (const auto n : kNucleotides) {
            if (n == prev) continue;
            if (seen++ == t) {
                out.push_back(to_char(n));
                prev = n;
                break;
            }
        }
    }
    return Codeword(std::move(out));
}

namespace detail {

struct HuffmanNode {
    std::uint64_t weight;
    std::size_t order;  // tie-break key
    std::vector<std::size_t> children;
    SymbolId symbol = 0;
    bool is_leaf = false;
    bool is_dummy = false;
};

} // namespace detail

/// Optimal ternary Huffman code over the nonzero-count symbols, relabeled to
/// nucleotides with goldman_label. Zero-count symbols get no codeword.
///
/// Ties on weight merge leaves in ascending SymbolId order, then the padding
/// dummy, then internal nodes in creation order. Within a merge the lightest
/// child takes digit 0.
inline Codebook build_huffman_goldman(const FrequencyTable& freqs) {
    using detail::HuffmanNode;
    std::vector<HuffmanNode> nodes;
    for (const auto& [id, count] : freqs) {
        if (count == 0) continue;
        nodes.push_back({count, nodes.size(), {}, id, true, false});
    }
    if (nodes.size() < 2)
        throw DegenerateSourceError("at least two symbols with nonzero count are required");

    const std::size_t n_real = nodes.size();
    // Each merge removes two nodes, so the leaf count must be odd.
    if ((n_real - 1) % 2 != 0) nodes.push_back({0, n_real, {}, 0, true, true});

    using Key = std::pair<std::uint64_t, std::size_t>;
    std::priority_queue<std::pair<Key, std::size_t>, std::vector<std::pair<Key, std::size_t>>,
                        std::greater<>>
        heap;
    for (std::size_t i = 0; i < nodes.size(); ++i) heap.push({{nodes[i].weight, nodes[i].order}, i});

    std::size_t next_order = n_real + 1;
    while (heap.size() > 1) {
        HuffmanNode parent{0, next_order++, {}, 0, false, false};
        for (int j = 0; j < 3; ++j) {
            const auto idx = heap.top().second;
            heap.pop();
            parent.weight += nodes[idx].weight;
            parent.children.push_back(idx);
        }
        nodes.push_back(std::move(parent));
        heap.push({{nodes.back().weight, nodes.back().order}, nodes.size() - 1});
    }

    Codebook::Map entries;
    std::vector<std::pair<std::size_t, std::vector<std::uint8_t>>> stack{{heap.top().second, {}}};
    while (!stack.empty()) {
        auto [idx, path] = std::move(stack.back());
        stack.pop_back();
        const auto& node = nodes[idx];
        if (node.is_leaf) {
            if (!node.is_dummy) {
                if (path.size() > Codeword::kMaxLength)
                    throw InvalidArgument("frequency table produces codewords longer than " +
                                          std::to_string(Codeword::kMaxLength));
                entries.emplace(node.symbol, goldman_label(path));
            }
            continue;
        }
        for (std::size_t j = 0; j < node.children.size(); ++j) {
            auto child_path = path;
            child_path.push_back(static_cast<std::uint8_t>(j));
            stack.emplace_back(node.children[j], std::move(child_path));
        }
    }
    return Codebook(std::move(entries));
}

/// Mean codeword length in nucleotides per symbol, weighted by freqs.
inline Rational expected_length(const Codebook& cb, const FrequencyTable& freqs) {
    std::uint64_t total_len = 0;
    std::uint64_t total_count = 0;
    for (const auto& [id, count] : freqs) {
        if (count == 0) continue;
        const auto* cw = cb.find(id);
        if (cw == nullptr) throw CoverageError("symbol " + std::to_string(id) + " has no codeword", id);
        total_len += count * cw->size();
        total_count += count;
    }
    if (total_count == 0) throw InvalidArgument("frequency table has no nonzero counts");
    return Rational::make(total_len, total_count);
}

// --- text format: "<id>\t<codeword>" per line, '#' comments ---

inline Codebook parse_codebook(std::istream& in) {
    Codebook::Map entries;
    std::vector<std::pair<std::string, std::size_t>> word_lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw ParseError("expected '<symbol id><TAB><codeword>'", line_no);
        const std::string_view id_text(line.data(), tab);
        if (!std::all_of(id_text.begin(), id_text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            id_text.size() > 10)
            throw ParseError("invalid symbol id '" + std::string(id_text) + "'", line_no);
        const auto id_wide = std::stoull(std::string(id_text));
        if (id_wide > UINT32_MAX) throw ParseError("symbol id out of range", line_no);
        const auto id = static_cast<SymbolId>(id_wide);
        std::string word = line.substr(tab + 1);
        if (const auto bad = find_invalid_nucleotide(word); bad != std::string::npos)
            throw ParseError(std::string("invalid nucleotide '") + word[bad] + "'", line_no);
        if (word.size() > Codeword::kMaxLength) throw ParseError("codeword too long", line_no);
        if (!entries.emplace(id, Codeword(word)).second)
            throw ParseError("duplicate symbol id " + std::to_string(id), line_no);
        word_lines.emplace_back(std::move(word), line_no);
    }
    if (entries.empty()) throw ParseError("codebook file has no entries");
    std::sort(word_lines.begin(), word_lines.end());
    for (std::size_t i = 1; i < word_lines.size(); ++i) {
        if (word_lines[i].first.starts_with(word_lines[i - 1].first))
            throw ParseError("codeword violates the prefix-free property",
                             std::max(word_lines[i].second, word_lines[i - 1].second));
    }
    return Codebook(std::move(entries));
}

inline void format_codebook(const Codebook& cb, std::ostream& out) {
    for (const auto& [id, cw] : cb) out << id << '\t' << cw.str() << '\n';
}

inline Codebook read_codebook(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open codebook file " + path.string());
    return parse_codebook(in);
}

inline void write_codebook(const Codebook& cb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write codebook file " + path.string());
    format_codebook(cb, out);
    if (!out) throw ParseError("write failed for " + path.string());
}

/// "<id> <count>" per line (tab or spaces), '#' comments.
inline FrequencyTable parse_frequency_table(std::istream& in) {
    FrequencyTable freqs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        std::istringstream fields(line);
        long long id = -1;
        long long count = -1;
        std::string rest;
        if (!(fields >> id >> count) || (fields >> rest) || id < 0 || id > UINT32_MAX || count < 0)
            throw ParseError("expected '<symbol id> <count>'", line_no);
        if (!freqs.emplace(static_cast<SymbolId>(id), static_cast<std::uint64_t>(count)).second)
            throw ParseError("duplicate symbol id " + std::to_string(id), line_no);
    }
    return freqs;
}

inline FrequencyTable read_frequency_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open frequency file " + path.string());
    return parse_frequency_table(in);
}

} // namespace dnarot
