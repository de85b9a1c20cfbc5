#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "scaw/block.hpp"
#include "scaw/cpa.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/leakage.hpp"
#include "scaw/trace_io.hpp"

using namespace scaw;

namespace {

const char* const kStdKey =
    "8899aabbccddeeff0011223344556677fedcba98765432100123456789abcdef";

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("trace_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string path(const char* name) const { return (dir / name).string(); }
};

TraceSet sample_set(std::size_t n, std::uint32_t spe = 1) {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg;
    cfg.sigma = 1.5;
    cfg.alpha = 0.75;
    cfg.beta = -2.0;
    cfg.seed = 8888;
    cfg.samples_per_event = spe;
    return simulate_traces(opt, n, cfg);
}

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_CASE("write/read round-trip preserves every field") {
    TempDir tmp;
    const TraceSet ts = sample_set(25, 2);
    const std::string path = tmp.path("roundtrip.sctr");
    const std::size_t written = write_trace_set(ts, path);
    CHECK(written == std::filesystem::file_size(path));

    const TraceSet back = read_trace_set(path);
    CHECK(back.cipher == ts.cipher);
    CHECK(back.key_fingerprint == ts.key_fingerprint);
    CHECK(back.config.model == ts.config.model);
    CHECK(back.config.bit_index == ts.config.bit_index);
    CHECK(back.config.alpha == ts.config.alpha);
    CHECK(back.config.beta == ts.config.beta);
    CHECK(back.config.sigma == ts.config.sigma);
    CHECK(back.config.samples_per_event == ts.config.samples_per_event);
    CHECK(back.config.seed == ts.config.seed);
    CHECK(back.samples_per_trace == ts.samples_per_trace);
    REQUIRE(back.event_map.size() == ts.event_map.size());
    for (std::size_t i = 0; i < ts.event_map.size(); ++i) {
        CHECK(back.event_map[i].label == ts.event_map[i].label);
        CHECK(back.event_map[i].offset == ts.event_map[i].offset);
    }
    REQUIRE(back.traces.size() == ts.traces.size());
    for (std::size_t i = 0; i < ts.traces.size(); ++i) {
        REQUIRE(back.traces[i].pt == ts.traces[i].pt);
        REQUIRE(back.traces[i].ct == ts.traces[i].ct);
        REQUIRE(back.traces[i].samples == ts.traces[i].samples);
    }

    // writing the re-read set reproduces the file byte-for-byte
    const std::string path2 = tmp.path("rewrite.sctr");
    write_trace_set(back, path2);
    CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("file size follows the declared layout") {
    TempDir tmp;
    for (std::size_t n : {std::size_t{1}, std::size_t{7}}) {
        const TraceSet ts = sample_set(n);
        const std::string path = tmp.path("size.sctr");
        const std::size_t written = write_trace_set(ts, path);
        std::size_t events = 0;
        for (const EventMapEntry& e : ts.event_map) events += 6 + e.label.size();
        const std::size_t want =
            63 + events + n * (32 + 4ull * ts.samples_per_trace);
        REQUIRE(written == want);
    }
}

TEST_CASE("an empty set cannot be written") {
    TempDir tmp;
    TraceSet empty;
    CHECK_THROWS_AS(write_trace_set(empty, tmp.path("empty.sctr")),
                    std::invalid_argument);
}

TEST_CASE("missing file raises IoError") {
    CHECK_THROWS_AS(read_trace_set("/nonexistent/dir/none.sctr"), IoError);
}

TEST_CASE("corrupted magic is a distinct failure") {
    TempDir tmp;
    const std::string path = tmp.path("magic.sctr");
    write_trace_set(sample_set(3), path);
    auto bytes = slurp(path);
    bytes[0] = 'X';
    spit(path, bytes);
    CHECK_THROWS_AS(read_trace_set(path), BadMagicError);
    // still a TraceFormatError for coarse handling
    CHECK_THROWS_AS(read_trace_set(path), TraceFormatError);
}

TEST_CASE("unsupported version is a distinct failure") {
    TempDir tmp;
    const std::string path = tmp.path("version.sctr");
    write_trace_set(sample_set(3), path);
    auto bytes = slurp(path);
    bytes[4] = 0x7f; // version is the little-endian u16 after "SCTR"
    spit(path, bytes);
    CHECK_THROWS_AS(read_trace_set(path), BadVersionError);
}

TEST_CASE("truncation anywhere is detected") {
    TempDir tmp;
    const std::string path = tmp.path("trunc.sctr");
    write_trace_set(sample_set(5), path);
    const auto bytes = slurp(path);
    const std::string cut = tmp.path("cut.sctr");
    // inside the magic, the header, the event map, and the trace payload
    for (const std::size_t keep :
         {std::size_t{2}, std::size_t{20}, std::size_t{70}, bytes.size() - 5}) {
        std::vector<std::uint8_t> short_bytes(bytes.begin(),
                                              bytes.begin() + keep);
        spit(cut, short_bytes);
        REQUIRE_THROWS_AS(read_trace_set(cut), TruncatedFileError);
    }
    // trailing garbage means the header lied about the payload too
    auto padded = bytes;
    padded.push_back(0);
    spit(cut, padded);
    CHECK_THROWS_AS(read_trace_set(cut), TruncatedFileError);
}

TEST_CASE("out-of-range cipher and model ids are rejected") {
    TempDir tmp;
    const std::string path = tmp.path("ids.sctr");
    write_trace_set(sample_set(3), path);
    auto bytes = slurp(path);
    auto corrupt = bytes;
    corrupt[6] = 9; // cipher id
    spit(path, corrupt);
    CHECK_THROWS_AS(read_trace_set(path), TraceFormatError);
    corrupt = bytes;
    corrupt[7] = 9; // model tag
    spit(path, corrupt);
    CHECK_THROWS_AS(read_trace_set(path), TraceFormatError);
}

TEST_CASE("trace CSV: labeled header and parseable rows") {
    TempDir tmp;
    const TraceSet ts = sample_set(4);
    const std::string path = tmp.path("traces.csv");
    export_csv(ts, path);

    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.rfind("keyexp_1,keyexp_2,", 0) == 0);
    CHECK(header.find("load,round_1") != std::string::npos);
    CHECK(header.find("final_xor") != std::string::npos);

    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(ss, cell, ',')) {
            const float got = std::stof(cell);
            const float want = ts.traces[rows - 1].samples[cols];
            REQUIRE(got == doctest::Approx(want).epsilon(1e-6));
            ++cols;
        }
        REQUIRE(cols == ts.samples_per_trace);
    }
    CHECK(rows == 4);
}

TEST_CASE("trace CSV: per-sample suffixes when samples_per_event > 1") {
    TempDir tmp;
    const TraceSet ts = sample_set(2, 3);
    const std::string path = tmp.path("wide.csv");
    export_csv(ts, path);
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.rfind("keyexp_1_0,keyexp_1_1,keyexp_1_2,keyexp_2_0", 0) == 0);
}

TEST_CASE("correlation CSV: absolute sample headers and nan degenerates") {
    TempDir tmp;
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg;
    cfg.sigma = 1.0;
    cfg.seed = 3;
    const TraceSet ts = simulate_traces(opt, 64, cfg);

    // HD attack: every guess row is degenerate -> all nan cells
    const CorrelationMatrix dead =
        attack_correlation_matrix(ts, AttackId::kuz_last_round_hd, 0);
    const std::string dead_path = tmp.path("dead.csv");
    export_csv(dead, dead_path);
    std::ifstream din(dead_path);
    std::string header, row;
    REQUIRE(std::getline(din, header));
    const std::uint32_t fx = ts.event_offset("final_xor");
    CHECK(header == "guess,s" + std::to_string(fx));
    REQUIRE(std::getline(din, row));
    CHECK(row == "0,nan");

    // HW attack: real numbers, 256 rows + header
    const CorrelationMatrix live =
        attack_correlation_matrix(ts, AttackId::kuz_last_round_hw, 0);
    const std::string live_path = tmp.path("live.csv");
    export_csv(live, live_path);
    std::ifstream lin(live_path);
    std::size_t lines = 0;
    std::string l;
    while (std::getline(lin, l)) ++lines;
    CHECK(lines == 257);
}
