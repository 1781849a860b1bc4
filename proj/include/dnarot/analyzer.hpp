#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnarot/oligo_io.hpp"

namespace dnarot {

/// Runs of more than three identical nucleotides violate the synthesis constraint.
inline constexpr std::size_t kHomopolymerThreshold = 4;
inline constexpr double kGcLow = 0.30;
inline constexpr double kGcHigh = 0.60;
inline constexpr std::size_t kGcBins = 20;

struct HomopolymerRun {
    std::size_t start = 0;
    std::size_t length = 0;

    bool operator==(const HomopolymerRun&) const = default;
};

/// Maximal runs of at least min_length identical letters.
inline std::vector<HomopolymerRun> homopolymer_runs(std::string_view oligo, std::size_t min_length = kHomopolymerThreshold) {
    std::vector<HomopolymerRun> runs;
    std::size_t i = 0;
    while (i < oligo.size()) {
        std::size_t j = i + 1;
        while (j < oligo.size() && oligo[j] == oligo[i]) ++j;
        if (j - i >= min_length) runs.push_back({i, j - i});
        i = j;
    }
    return runs;
}

struct OligoHomopolymers {
    std::size_t index = 0;
    std::size_t n_runs = 0;
    double avg_len = 0.0;
};

struct HomopolymerStats {
    std::size_t n_homopolymers = 0;
    double avg_len = 0.0;
    std::size_t max_len = 0;
    // Only oligos with at least one qualifying run.
    std::vector<std::pair<std::size_t, double>> per_oligo_avg;
    double clean_oligo_fraction = 0.0;
};

inline HomopolymerStats homopolymer_stats(const OligoPool& pool) {
    HomopolymerStats s;
    std::size_t total_len = 0;
    std::size_t clean = 0;
    for (std::size_t i = 0; i < pool.oligos.size(); ++i) {
        const auto runs = homopolymer_runs(pool.oligos[i]);
        if (runs.empty()) {
            ++clean;
            continue;
        }
        std::size_t oligo_len = 0;
        for (const auto& r : runs) {
            oligo_len += r.length;
            s.max_len = std::max(s.max_len, r.length);
        }
        s.n_homopolymers += runs.size();
        total_len += oligo_len;
        s.per_oligo_avg.emplace_back(i, static_cast<double>(oligo_len) / static_cast<double>(runs.size()));
    }
    if (s.n_homopolymers > 0) s.avg_len = static_cast<double>(total_len) / static_cast<double>(s.n_homopolymers);
    if (!pool.empty()) s.clean_oligo_fraction = static_cast<double>(clean) / static_cast<double>(pool.size());
    return s;
}

inline std::size_t gc_count(std::string_view oligo) {
    return static_cast<std::size_t>(std::count_if(oligo.begin(), oligo.end(), [](char c) { return c == 'G' || c == 'C'; }));
}

inline double gc_fraction(std::string_view oligo) {
    return oligo.empty() ? 0.0 : static_cast<double>(gc_count(oligo)) / static_cast<double>(oligo.size());
}

/// Integer comparisons so bin edges and the 30%/60% limits are exact.
inline std::size_t gc_bin(std::size_t gc, std::size_t len) {
    return len == 0 ? 0 : std::min(kGcBins - 1, gc * kGcBins / len);
}

inline bool gc_problematic(std::size_t gc, std::size_t len) {
    return len != 0 && (gc * 10 < 3 * len || gc * 10 > 6 * len);
}

struct GcReport {
    std::vector<double> per_oligo_gc;
    std::array<std::size_t, kGcBins> histogram{};
    double problematic_fraction = 0.0;
    std::size_t n_above_high = 0;
    std::size_t n_below_low = 0;
};

inline GcReport gc_report(const OligoPool& pool) {
    GcReport r;
    std::size_t bad = 0;
    for (const auto& o : pool.oligos) {
        const auto gc = gc_count(o);
        r.per_oligo_gc.push_back(gc_fraction(o));
        ++r.histogram[gc_bin(gc, o.size())];
        if (gc_problematic(gc, o.size())) {
            ++bad;
            (gc * 10 > 6 * o.size() ? r.n_above_high : r.n_below_low) += 1;
        }
    }
    if (!pool.empty()) r.problematic_fraction = static_cast<double>(bad) / static_cast<double>(pool.size());
    return r;
}

struct QualityReport {
    std::size_t n_oligos = 0;
    HomopolymerStats homopolymers;
    GcReport gc;
    std::vector<OligoHomopolymers> per_oligo;  // every oligo, for the CSV sidecar
};

inline QualityReport analyze(const OligoPool& pool) {
    QualityReport q;
    q.n_oligos = pool.size();
    q.homopolymers = homopolymer_stats(pool);
    q.gc = gc_report(pool);
    q.per_oligo.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const auto runs = homopolymer_runs(pool.oligos[i]);
        std::size_t len = 0;
        for (const auto& r : runs) len += r.length;
        q.per_oligo.push_back({i, runs.size(), runs.empty() ? 0.0 : static_cast<double>(len) / runs.size()});
    }
    return q;
}

/// Signed change from `before` to `after`.
struct QualityDelta {
    std::int64_t n_homopolymers = 0;
    double avg_len = 0.0;
    std::int64_t max_len = 0;
    double gc_problematic_fraction = 0.0;

    bool operator==(const QualityDelta&) const = default;
};

inline QualityDelta compare_reports(const QualityReport& before, const QualityReport& after) {
    const auto& a = before.homopolymers;
    const auto& b = after.homopolymers;
    return {static_cast<std::int64_t>(b.n_homopolymers) - static_cast<std::int64_t>(a.n_homopolymers),
            b.avg_len - a.avg_len,
            static_cast<std::int64_t>(b.max_len) - static_cast<std::int64_t>(a.max_len),
            after.gc.problematic_fraction - before.gc.problematic_fraction};
}

inline nlohmann::ordered_json to_json(const QualityReport& q, const std::string& per_oligo_csv = {}) {
    nlohmann::ordered_json j;
    j["n_homopolymers"] = q.homopolymers.n_homopolymers;
    j["avg_homopolymer_len"] = q.homopolymers.avg_len;
    j["max_homopolymer_len"] = q.homopolymers.max_len;
    j["n_oligos"] = q.n_oligos;
    j["clean_oligo_fraction"] = q.homopolymers.clean_oligo_fraction;
    j["gc_problematic_fraction"] = q.gc.problematic_fraction;
    j["gc_histogram"] = q.gc.histogram;
    j["per_oligo"] = per_oligo_csv.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(per_oligo_csv);
    return j;
}

inline nlohmann::ordered_json to_json(const QualityDelta& d) {
    return {{"delta_n_homopolymers", d.n_homopolymers},
            {"delta_avg_homopolymer_len", d.avg_len},
            {"delta_max_homopolymer_len", d.max_len},
            {"delta_gc_problematic_fraction", d.gc_problematic_fraction}};
}

/// index,gc,n_runs,avg_run_len
inline void write_per_oligo_csv(const QualityReport& q, std::ostream& out) {
    out << "index,gc,n_runs,avg_run_len\n";
    for (const auto& o : q.per_oligo)
        out << o.index << ',' << q.gc.per_oligo_gc[o.index] << ',' << o.n_runs << ',' << o.avg_len << '\n';
}

/// bin_low,bin_high,count with bins in percent
inline void write_gc_histogram_csv(const QualityReport& q, std::ostream& out) {
    out << "bin_low,bin_high,count\n";
    for (std::size_t b = 0; b < kGcBins; ++b)
        out << b * 100 / kGcBins << ',' << (b + 1) * 100 / kGcBins << ',' << q.gc.histogram[b] << '\n';
}

} // namespace dnarot
