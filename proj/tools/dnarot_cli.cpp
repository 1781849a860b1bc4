// dnarot: encode images or symbol streams into rotating-label DNA oligo pools,
// decode them back, analyze oligo quality, and generate codebooks.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dnarot/dnarot.hpp"

namespace fs = std::filesystem;
using namespace dnarot;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCorrupt = 3;

struct CliConfig {
    std::string input;
    std::string output;
    int quality = 50;
    std::string mode = "none";
    std::uint64_t seed = 0;
    std::size_t oligo_length = kDefaultOligoLength;
    std::size_t fragment_length = 6;
    std::string codebook;
    unsigned rotated = 0;
    bool verbose = false;
};

ScheduleMode parse_mode(const CliConfig& cfg) {
    if (cfg.mode == "none") return ScheduleMode::none();
    if (cfg.mode == "roundrobin") return ScheduleMode::round_robin();
    return ScheduleMode::pseudo_random(cfg.seed);
}

void require_file(const std::string& path, const char* what) {
    if (!fs::is_regular_file(path)) throw ParseError(std::string(what) + " not found: " + path);
}

std::vector<SymbolId> read_symbols(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<SymbolId> out;
    std::string tok;
    while (in >> tok) {
        if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 10)
            throw ParseError("invalid symbol '" + tok + "' in " + path.string());
        const auto v = std::stoull(tok);
        if (v > UINT32_MAX) throw ParseError("symbol out of range: " + tok);
        out.push_back(static_cast<SymbolId>(v));
    }
    return out;
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_encode(const CliConfig& cfg) {
    require_file(cfg.input, "input file");
    const auto mode = parse_mode(cfg);
    FastaDocument doc;
    nlohmann::ordered_json summary;
    summary["mode"] = to_string(mode.kind);
    if (mode.kind == ScheduleKind::PseudoRandom) summary["seed"] = mode.seed;

    std::size_t payload_nt = 0;
    if (cfg.codebook.empty()) {
        const auto img = read_pgm(fs::path(cfg.input));
        const auto enc = encode_image(img, cfg.quality, mode);
        doc.header = enc.header;
        doc.pool = segment(enc.payload, cfg.oligo_length);
        payload_nt = enc.payload.size();
        summary["width"] = img.width;
        summary["height"] = img.height;
        summary["quality"] = cfg.quality;
        summary["nucleotides"] = payload_nt;
        summary["nt_per_pixel"] = nucleotides_per_pixel(enc);
    } else {
        require_file(cfg.codebook, "codebook");
        const auto rs = generate_codes(read_codebook(cfg.codebook));
        const auto symbols = read_symbols(cfg.input);
        Scheduler sched(mode);
        const auto payload = encode_stream(symbols, rs, sched, cfg.fragment_length);
        StreamHeader h{mode, static_cast<std::uint32_t>(cfg.fragment_length), symbols.size()};
        doc.header = serialize_stream_header(h);
        doc.pool = segment(payload, cfg.oligo_length);
        payload_nt = payload.size();
        summary["fragment_length"] = cfg.fragment_length;
        summary["n_symbols"] = symbols.size();
        summary["nucleotides"] = payload_nt;
        summary["nt_per_symbol"] =
            symbols.empty() ? 0.0 : static_cast<double>(payload_nt) / static_cast<double>(symbols.size());
    }
    summary["header_nucleotides"] = doc.header.size();
    summary["oligo_length"] = cfg.oligo_length;
    summary["n_oligos"] = doc.pool.size();
    write_fasta(doc, fs::path(cfg.output));
    if (cfg.verbose)
        std::cerr << "encoded " << payload_nt << " payload nucleotides into " << doc.pool.size() << " oligos -> "
                  << cfg.output << '\n';
    print_json(summary);
    return kExitOk;
}

int cmd_decode(const CliConfig& cfg) {
    require_file(cfg.input, "input file");
    const auto doc = read_fasta_document(fs::path(cfg.input));
    if (doc.header.empty()) throw DecodeError("FASTA has no header record", 0);
    const auto payload = reassemble(doc.pool);
    const auto magic = NucleotideReader(doc.header).get(32);
    nlohmann::ordered_json summary;

    if (magic == ImageHeader::kMagic) {
        const auto h = parse_header(doc.header);
        const auto img = decode_image(payload, h);
        write_pgm(img, fs::path(cfg.output));
        summary["width"] = img.width;
        summary["height"] = img.height;
        summary["quality"] = h.quality;
        summary["mode"] = to_string(h.mode.kind);
    } else if (magic == StreamHeader::kMagic) {
        if (cfg.codebook.empty()) throw ParseError("--codebook is required to decode a symbol stream");
        require_file(cfg.codebook, "codebook");
        const auto h = parse_stream_header(doc.header);
        const auto rs = generate_codes(read_codebook(cfg.codebook));
        Scheduler sched(h.mode);
        const auto symbols = decode_stream(payload, rs, sched, h.fragment_len, h.n_symbols);
        std::ofstream out(cfg.output);
        if (!out) throw ParseError("cannot write " + cfg.output);
        for (std::size_t i = 0; i < symbols.size(); ++i) out << symbols[i] << (i + 1 == symbols.size() ? "\n" : " ");
        summary["n_symbols"] = symbols.size();
        summary["mode"] = to_string(h.mode.kind);
    } else {
        throw DecodeError("unrecognized header magic", 0);
    }
    summary["nucleotides"] = payload.size();
    if (cfg.verbose) std::cerr << "decoded " << payload.size() << " nucleotides -> " << cfg.output << '\n';
    print_json(summary);
    return kExitOk;
}

int cmd_analyze(const CliConfig& cfg) {
    require_file(cfg.input, "input file");
    const auto pool = read_fasta(fs::path(cfg.input));
    const auto report = analyze(pool);
    if (cfg.output.empty()) {
        print_json(to_json(report));
        return kExitOk;
    }
    const fs::path out_path(cfg.output);
    const auto dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
    const auto per_oligo_csv = dir / "homopolymer_per_oligo.csv";
    {
        std::ofstream csv(per_oligo_csv);
        if (!csv) throw ParseError("cannot write " + per_oligo_csv.string());
        write_per_oligo_csv(report, csv);
        std::ofstream hist(dir / "gc_histogram.csv");
        if (!hist) throw ParseError("cannot write " + (dir / "gc_histogram.csv").string());
        write_gc_histogram_csv(report, hist);
    }
    const auto j = to_json(report, per_oligo_csv.string());
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write " + cfg.output);
    out << j.dump(2) << '\n';
    if (cfg.verbose)
        std::cerr << report.n_oligos << " oligos, " << report.homopolymers.n_homopolymers
                  << " homopolymers, max length " << report.homopolymers.max_len << '\n';
    print_json(j);
    return kExitOk;
}

int cmd_gen_codebook(const CliConfig& cfg) {
    Codebook base;
    if (!cfg.codebook.empty()) {
        require_file(cfg.codebook, "codebook");
        base = read_codebook(cfg.codebook);
        if (!validate_prefix_free(base)) throw ParseError("codebook is not prefix-free");
    } else {
        require_file(cfg.input, "frequency file");
        base = build_huffman_goldman(read_frequency_table(cfg.input));
    }
    const auto book = switch_letters(base, cfg.rotated);
    write_codebook(book, cfg.output);
    std::size_t max_len = 0;
    for (const auto& [id, cw] : book) max_len = std::max(max_len, cw.size());
    print_json({{"entries", book.size()}, {"max_codeword_length", max_len}, {"rotated", cfg.rotated}});
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotating-label quaternary entropy coder for DNA data storage"};
    app.require_subcommand(1);
    CliConfig cfg;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--verbose", cfg.verbose, "Human-readable progress on standard error");
    };

    auto* encode = app.add_subcommand("encode", "Encode a PGM image (or a symbol file with --codebook) to FASTA");
    encode->add_option("--input", cfg.input, "Input PGM or symbol file")->required();
    encode->add_option("--output", cfg.output, "Output FASTA")->required();
    encode->add_option("--quality", cfg.quality, "JPEG-style quality")->check(CLI::Range(1, 100));
    encode->add_option("--mode", cfg.mode, "Code rotation schedule")
        ->check(CLI::IsMember({"none", "roundrobin", "random"}));
    encode->add_option("--seed", cfg.seed, "Seed for --mode random");
    encode->add_option("--oligo-length", cfg.oligo_length, "Nucleotides per oligo")->check(CLI::PositiveNumber);
    encode->add_option("--fragment-length", cfg.fragment_length, "Symbols per code in stream mode")
        ->check(CLI::PositiveNumber);
    encode->add_option("--codebook", cfg.codebook, "Codebook file; selects symbol-stream mode");
    add_common(encode);

    auto* decode = app.add_subcommand("decode", "Decode a FASTA pool back to PGM (or symbols with --codebook)");
    decode->add_option("--input", cfg.input, "Input FASTA")->required();
    decode->add_option("--output", cfg.output, "Output PGM or symbol file")->required();
    decode->add_option("--codebook", cfg.codebook, "Codebook file for symbol streams");
    add_common(decode);

    auto* analyze_cmd = app.add_subcommand("analyze", "Oligo quality report (homopolymers, GC content)");
    analyze_cmd->add_option("--input", cfg.input, "Input FASTA")->required();
    analyze_cmd->add_option("--output", cfg.output, "JSON report path; CSV sidecars go next to it");
    add_common(analyze_cmd);

    auto* gen = app.add_subcommand("gen-codebook", "Build a Huffman/Goldman codebook or rotate an existing one");
    gen->add_option("--input", cfg.input, "Frequency file: '<symbol> <count>' per line");
    gen->add_option("--codebook", cfg.codebook, "Existing codebook to rotate instead of building one");
    gen->add_option("--output", cfg.output, "Output codebook file")->required();
    gen->add_option("--rotated", cfg.rotated, "Letter rotation 0..3")->check(CLI::Range(0u, 3u));
    add_common(gen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (gen->parsed() && cfg.input.empty() && cfg.codebook.empty())
            throw ParseError("gen-codebook needs --input or --codebook");
        if (*encode) return cmd_encode(cfg);
        if (*decode) return cmd_decode(cfg);
        if (*analyze_cmd) return cmd_analyze(cfg);
        return cmd_gen_codebook(cfg);
    } catch (const DecodeError& e) {
        std::cerr << "error: corrupt stream: " << e.what() << '\n';
        return kExitCorrupt;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
