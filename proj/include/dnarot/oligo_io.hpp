#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dnarot/error.hpp"
#include "dnarot/nucleotide.hpp"

namespace dnarot {

inline constexpr std::size_t kDefaultOligoLength = 200;

/// Ordered oligos cut from one stream. Every oligo except the last has
/// exactly oligo_length nucleotides.
struct OligoPool {
    std::vector<std::string> oligos;
    std::size_t oligo_length = kDefaultOligoLength;

    std::size_t size() const noexcept { return oligos.size(); }
    bool empty() const noexcept { return oligos.empty(); }
    std::size_t last_len() const noexcept { return oligos.empty() ? 0 : oligos.back().size(); }

    std::size_t total_nucleotides() const noexcept {
        std::size_t n = 0;
        for (const auto& o : oligos) n += o.size();
        return n;
    }

    bool operator==(const OligoPool&) const = default;
};

inline OligoPool segment(std::string_view ns, std::size_t oligo_length = kDefaultOligoLength) {
    if (oligo_length == 0) throw InvalidArgument("oligo length must be positive");
    OligoPool pool;
    pool.oligo_length = oligo_length;
    for (std::size_t i = 0; i < ns.size(); i += oligo_length) pool.oligos.emplace_back(ns.substr(i, oligo_length));
    return pool;
}

inline std::string reassemble(const OligoPool& pool) {
    std::string out;
    out.reserve(pool.total_nucleotides());
    for (const auto& o : pool.oligos) out += o;
    return out;
}

/// A FASTA document as written by the CLI: an optional `>header` record
/// carrying formatting data, followed by `>oligo_NNNNNN` payload records.
struct FastaDocument {
    std::string header;
    OligoPool pool;

    bool operator==(const FastaDocument&) const = default;
};

inline std::string oligo_record_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "oligo_%06zu", index);
    return buf;
}

inline void write_fasta(const FastaDocument& doc, std::ostream& out) {
    if (!doc.header.empty()) out << ">header\n" << doc.header << '\n';
    for (std::size_t i = 0; i < doc.pool.oligos.size(); ++i)
        out << '>' << oligo_record_name(i) << '\n' << doc.pool.oligos[i] << '\n';
}

inline void write_fasta(const OligoPool& pool, std::ostream& out) { write_fasta(FastaDocument{{}, pool}, out); }

/// Parses records, validating the ACGT alphabet and contiguous oligo indices.
/// The oligo length is taken from the first oligo.
inline FastaDocument read_fasta_document(std::istream& in) {
    FastaDocument doc;
    std::string line;
    std::size_t line_no = 0;
    enum class Record { None, Header, Oligo } current = Record::None;
    bool have_sequence = true;
    bool seen_header = false;
    std::size_t next_index = 0;

    const auto finish_record = [&] {
        if (!have_sequence) throw ParseError("record has no sequence line", line_no);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '>') {
            finish_record();
            const std::string_view name = std::string_view(line).substr(1);
            if (name == "header") {
                if (seen_header || next_index != 0) throw ParseError("header record must come first", line_no);
                seen_header = true;
                current = Record::Header;
            } else if (name.starts_with("oligo_")) {
                const auto digits = name.substr(6);
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
                    throw ParseError("malformed oligo record name", line_no);
                const auto index = std::stoull(std::string(digits));
                if (index < next_index) throw ParseError("duplicate oligo index " + std::to_string(index), line_no);
                if (index > next_index) throw ParseError("missing oligo index " + std::to_string(next_index), line_no);
                ++next_index;
                doc.pool.oligos.emplace_back();
                current = Record::Oligo;
            } else {
                throw ParseError("unexpected record name '" + std::string(name) + "'", line_no);
            }
            have_sequence = false;
            continue;
        }
        if (current == Record::None) throw ParseError("sequence data before first record", line_no);
        if (const auto bad = find_invalid_nucleotide(line); bad != std::string::npos)
            throw ParseError(std::string("invalid nucleotide '") + line[bad] + "'", line_no);
        (current == Record::Header ? doc.header : doc.pool.oligos.back()) += line;
        have_sequence = true;
    }
    finish_record();

    auto& oligos = doc.pool.oligos;
    if (!oligos.empty()) {
        doc.pool.oligo_length = oligos.front().size();
        for (std::size_t i = 0; i < oligos.size(); ++i) {
            const bool last = i + 1 == oligos.size();
            if (last ? oligos[i].size() > doc.pool.oligo_length : oligos[i].size() != doc.pool.oligo_length)
                throw ParseError("oligo " + std::to_string(i) + " has inconsistent length");
        }
    }
    return doc;
}

inline OligoPool read_fasta(std::istream& in) { return read_fasta_document(in).pool; }

inline FastaDocument read_fasta_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_fasta_document(in);
}

inline OligoPool read_fasta(const std::filesystem::path& path) { return read_fasta_document(path).pool; }

inline void write_fasta(const FastaDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    write_fasta(doc, out);
    if (!out) throw ParseError("write failed for " + path.string());
}

inline void write_fasta(const OligoPool& pool, const std::filesystem::path& path) {
    write_fasta(FastaDocument{{}, pool}, path);
}

} // namespace dnarot
