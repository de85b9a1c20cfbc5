#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "scaw/aes256.hpp"
#include "scaw/block.hpp"
#include "scaw/cpa.hpp"
#include "scaw/gf_linear.hpp"
#include "scaw/kernels.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/leakage.hpp"
#include "scaw/masking.hpp"
#include "scaw/trace_io.hpp"

namespace {

using namespace scaw;

// Exit statuses: 0 success, 2 usage/validation, 3 file I/O or format,
// 4 attack incompatible with the trace set.
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitIncompatible = 4;

CipherId parse_cipher(const std::string& name) {
    if (name == "kuznyechik") return CipherId::kuznyechik;
    if (name == "kuznyechik-masked") return CipherId::kuznyechik_masked;
    if (name == "aes256") return CipherId::aes256;
    throw std::invalid_argument("unknown cipher: " + name);
}

LeakModel parse_model(const std::string& name) {
    if (name == "hw") return LeakModel::hamming_weight;
    if (name == "hd") return LeakModel::hamming_distance;
    if (name == "bit") return LeakModel::single_bit;
    throw std::invalid_argument("unknown leakage model: " + name);
}

kern::Isa parse_isa(const std::string& name) {
    for (kern::Isa isa : {kern::Isa::scalar, kern::Isa::sse2, kern::Isa::avx2,
                          kern::Isa::neon})
        if (name == kern::isa_name(isa)) return isa;
    throw std::invalid_argument("unknown isa: " + name);
}

std::pair<std::uint32_t, std::uint32_t> parse_window(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("window must be lo:hi");
    try {
        const unsigned long lo = std::stoul(spec.substr(0, colon));
        const unsigned long hi = std::stoul(spec.substr(colon + 1));
        return {static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(hi)};
    } catch (const std::exception&) {
        throw std::invalid_argument("window must be lo:hi with numeric bounds");
    }
}

struct EncryptArgs {
    std::string key_hex, block_hex;
    std::string cipher = "kuznyechik";
    std::uint64_t mask_seed = 0;
};

void run_encrypt(const EncryptArgs& a) {
    const Key256 key = key_from_hex(a.key_hex);
    const Block p = block_from_hex(a.block_hex);
    const CipherId cipher = parse_cipher(a.cipher);
    Block c;
    switch (cipher) {
        case CipherId::kuznyechik:
            c = encrypt(p, key_schedule(key));
            break;
        case CipherId::kuznyechik_masked: {
            MaskGenerator gen(a.mask_seed);
            c = masked_encrypt(p, key_schedule(key),
                               build_mask_schedule(fresh_mask(gen)));
            break;
        }
        case CipherId::aes256:
            c = aes256_encrypt(p, key);
            break;
    }
    std::cout << to_hex(c) << "\n";
}

void run_decrypt(const EncryptArgs& a) {
    const Key256 key = key_from_hex(a.key_hex);
    const Block c = block_from_hex(a.block_hex);
    const CipherId cipher = parse_cipher(a.cipher);
    if (cipher == CipherId::aes256)
        throw std::invalid_argument("aes256 decryption is not supported");
    // Masking changes intermediates, never the ciphertext, so decryption is
    // the plain inverse either way.
    std::cout << to_hex(decrypt(c, key_schedule(key))) << "\n";
}

struct KeyscheduleArgs {
    std::string key_hex;
    bool invert = false;
    std::string odd_hex, even_hex;
    int pair_index = 0;
};

void run_keyschedule(const KeyscheduleArgs& a) {
    if (a.invert) {
        if (a.odd_hex.empty() || a.even_hex.empty())
            throw std::invalid_argument("--invert needs --odd and --even subkeys");
        const Key256 master = recover_master_from_pair(
            block_from_hex(a.odd_hex), block_from_hex(a.even_hex), a.pair_index);
        std::cout << to_hex(master) << "\n";
        return;
    }
    if (a.key_hex.empty()) throw std::invalid_argument("--key is required");
    const RoundKeySet rk = key_schedule(key_from_hex(a.key_hex));
    for (int i = 0; i < 10; ++i)
        std::cout << "k" << (i + 1) << " " << to_hex(rk.k[i]) << "\n";
}

struct GenTracesArgs {
    std::string cipher = "kuznyechik";
    std::string key_hex;
    std::uint64_t n = 0;
    std::string model = "hd";
    std::uint32_t bit_index = 0;
    double alpha = 1.0, beta = 0.0, sigma = 1.0;
    std::uint32_t samples_per_event = 1;
    std::uint64_t seed = 0;
    std::uint64_t mask_seed = 0;
    std::string remask = "per-key";
    std::string out_path;
};

void run_gen_traces(const GenTracesArgs& a) {
    if (a.n < 1) throw std::invalid_argument("trace count must be >= 1");
    if (a.bit_index > 127)
        throw std::invalid_argument("bit_index must be in 0..127");
    if (a.remask != "per-key" && a.remask != "per-block")
        throw std::invalid_argument("--remask must be per-key or per-block");

    SimOptions opt;
    opt.cipher = parse_cipher(a.cipher);
    opt.key = key_from_hex(a.key_hex);
    opt.mask_seed = a.mask_seed;
    opt.remask_per_block = (a.remask == "per-block");

    LeakageConfig cfg;
    cfg.model = parse_model(a.model);
    cfg.bit_index = static_cast<std::uint8_t>(a.bit_index);
    cfg.alpha = a.alpha;
    cfg.beta = a.beta;
    cfg.sigma = a.sigma;
    cfg.samples_per_event = a.samples_per_event;
    cfg.seed = a.seed;

    const TraceSet ts = simulate_traces(opt, a.n, cfg);
    const std::size_t bytes = write_trace_set(ts, a.out_path);
    std::cout << "wrote " << a.out_path << ": " << ts.traces.size() << " traces, "
              << ts.samples_per_trace << " samples each, " << bytes << " bytes\n";
}

struct AttackArgs {
    std::string traces_path;
    std::string attack;
    std::string true_key_hex, k10_hex, window;
    std::string report_path, csv_path, matrix_csv_path;
    int matrix_byte = 0;
};

void run_attack_cmd(const AttackArgs& a) {
    const std::optional<AttackId> id = attack_from_name(a.attack);
    if (!id) throw std::invalid_argument("unknown attack: " + a.attack);

    AttackOptions opt;
    if (!a.true_key_hex.empty()) opt.true_key = key_from_hex(a.true_key_hex);
    if (!a.k10_hex.empty()) opt.k10 = block_from_hex(a.k10_hex);
    if (!a.window.empty()) opt.window = parse_window(a.window);
    if (*id == AttackId::kuz_round9 && !opt.k10)
        throw std::invalid_argument("kuz-round9 requires --k10");

    const TraceSet ts = read_trace_set(a.traces_path);
    const AttackReport rep = run_attack(ts, *id, opt);
    const std::string text = report_to_text(rep);
    std::cout << text;

    if (!a.report_path.empty()) {
        std::ofstream out(a.report_path, std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + a.report_path);
        out << text;
        if (!out.flush()) throw IoError("write failed: " + a.report_path);
    }
    if (!a.csv_path.empty()) {
        std::ofstream out(a.csv_path, std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + a.csv_path);
        out << report_to_csv(rep);
        if (!out.flush()) throw IoError("write failed: " + a.csv_path);
    }
    if (!a.matrix_csv_path.empty()) {
        if (a.matrix_byte < 0 || a.matrix_byte > 15)
            throw std::invalid_argument("--matrix-byte must be in 0..15");
        export_csv(attack_correlation_matrix(ts, *id, a.matrix_byte, opt),
                   a.matrix_csv_path);
    }
}

struct BenchArgs {
    std::string cipher = "kuznyechik";
    std::string variant = "both";
    double seconds = 1.0;
    std::string isa;
};

void bench_one(const char* variant, Block (*fn)(const Block&, const RoundKeySet&),
               const RoundKeySet& rk, double seconds) {
    using clock = std::chrono::steady_clock;
    Block x = block_from_hex("00112233445566778899aabbccddeeff");
    // Chain blocks so the work cannot be hoisted or elided.
    std::uint64_t blocks = 0;
    const auto t0 = clock::now();
    const auto deadline = t0 + std::chrono::duration<double>(seconds);
    do {
        for (int i = 0; i < 256; ++i) x = fn(x, rk);
        blocks += 256;
    } while (clock::now() < deadline);
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    const double bps = static_cast<double>(blocks) / dt;
    std::cout << "variant=" << variant << " isa=" << kern::isa_name(kern::active_isa())
              << " blocks_per_s=" << static_cast<std::uint64_t>(bps)
              << " mbps=" << bps * 128.0 / 1e6 << " checksum=" << to_hex(x).substr(0, 8)
              << "\n";
}

void run_bench(const BenchArgs& a) {
    if (a.seconds <= 0.0)
        throw std::invalid_argument("bench duration must be positive");
    if (parse_cipher(a.cipher) != CipherId::kuznyechik)
        throw std::invalid_argument("bench supports only the kuznyechik cipher");
    if (!a.isa.empty()) kern::force_isa(parse_isa(a.isa));
    if (a.variant != "reference" && a.variant != "fast" && a.variant != "both")
        throw std::invalid_argument("--variant must be reference, fast, or both");

    const RoundKeySet rk = key_schedule(key_from_hex(
        "8899aabbccddeeff0011223344556677fedcba98765432100123456789abcdef"));
    if (a.variant != "fast") bench_one("reference", encrypt_ref, rk, a.seconds);
    if (a.variant != "reference") bench_one("fast", encrypt_fast, rk, a.seconds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"side-channel analysis workbench: Grasshopper/Kuznyechik, "
                 "boolean masking, simulated leakage, CPA attacks"};
    app.require_subcommand(1);

    EncryptArgs enc;
    CLI::App* c_enc = app.add_subcommand("encrypt", "Encrypt one block");
    c_enc->add_option("--key", enc.key_hex, "256-bit key, 64 hex chars")->required();
    c_enc->add_option("--block", enc.block_hex, "128-bit block, 32 hex chars")->required();
    c_enc->add_option("--cipher", enc.cipher,
                      "kuznyechik | kuznyechik-masked | aes256");
    c_enc->add_option("--mask-seed", enc.mask_seed, "mask PRNG seed (masked cipher)");
    c_enc->callback([&] { run_encrypt(enc); });

    EncryptArgs dec;
    CLI::App* c_dec = app.add_subcommand("decrypt", "Decrypt one block");
    c_dec->add_option("--key", dec.key_hex, "256-bit key, 64 hex chars")->required();
    c_dec->add_option("--block", dec.block_hex, "128-bit block, 32 hex chars")->required();
    c_dec->add_option("--cipher", dec.cipher, "kuznyechik | kuznyechik-masked");
    c_dec->add_option("--mask-seed", dec.mask_seed, "accepted for symmetry; unused");
    c_dec->callback([&] { run_decrypt(dec); });

    KeyscheduleArgs ks;
    CLI::App* c_ks = app.add_subcommand(
        "keyschedule", "Derive the ten subkeys, or invert a subkey pair");
    c_ks->add_option("--key", ks.key_hex, "256-bit key, 64 hex chars");
    c_ks->add_flag("--invert", ks.invert, "recover the master key from a subkey pair");
    c_ks->add_option("--odd", ks.odd_hex, "odd subkey of the pair (k3/k5/k7/k9)");
    c_ks->add_option("--even", ks.even_hex, "even subkey of the pair (k4/k6/k8/k10)");
    c_ks->add_option("--pair-index", ks.pair_index,
                     "1 = (k3,k4) ... 4 = (k9,k10)");
    c_ks->callback([&] { run_keyschedule(ks); });

    GenTracesArgs gen;
    CLI::App* c_gen = app.add_subcommand("gen-traces", "Simulate leakage traces");
    c_gen->add_option("--cipher", gen.cipher,
                      "kuznyechik | kuznyechik-masked | aes256");
    c_gen->add_option("--key", gen.key_hex, "256-bit key, 64 hex chars")->required();
    c_gen->add_option("-n,--traces", gen.n, "trace count")->required();
    c_gen->add_option("--model", gen.model, "hw | hd | bit");
    c_gen->add_option("--bit-index", gen.bit_index, "bit for the bit model (0..127)");
    c_gen->add_option("--alpha", gen.alpha, "leakage scale");
    c_gen->add_option("--beta", gen.beta, "leakage offset");
    c_gen->add_option("--sigma", gen.sigma, "Gaussian noise std-dev");
    c_gen->add_option("--samples-per-event", gen.samples_per_event, "samples per event");
    c_gen->add_option("--seed", gen.seed, "simulation seed");
    c_gen->add_option("--mask-seed", gen.mask_seed, "mask PRNG seed (masked cipher)");
    c_gen->add_option("--remask", gen.remask, "per-key | per-block");
    c_gen->add_option("-o,--out", gen.out_path, "output SCTR file")->required();
    c_gen->callback([&] { run_gen_traces(gen); });

    AttackArgs atk;
    CLI::App* c_atk = app.add_subcommand("attack", "Run a CPA attack on a trace file");
    c_atk->add_option("--traces", atk.traces_path, "SCTR trace file")->required();
    c_atk->add_option("--attack", atk.attack,
                      "aes-last-round | kuz-last-round-hd | kuz-last-round-hw | "
                      "kuz-round9")
        ->required();
    c_atk->add_option("--true-key", atk.true_key_hex,
                      "master key for rank reporting, 64 hex chars");
    c_atk->add_option("--k10", atk.k10_hex, "known k10 subkey (kuz-round9)");
    c_atk->add_option("--window", atk.window, "sample window lo:hi");
    c_atk->add_option("--report", atk.report_path, "write the text report here");
    c_atk->add_option("--csv", atk.csv_path, "write the per-byte CSV here");
    c_atk->add_option("--matrix-csv", atk.matrix_csv_path,
                      "dump one byte's correlation matrix as CSV");
    c_atk->add_option("--matrix-byte", atk.matrix_byte,
                      "byte index for --matrix-csv (0..15)");
    c_atk->callback([&] { run_attack_cmd(atk); });

    BenchArgs bench;
    CLI::App* c_bench = app.add_subcommand("bench", "Throughput of the cipher paths");
    c_bench->add_option("--cipher", bench.cipher, "kuznyechik");
    c_bench->add_option("--variant", bench.variant, "reference | fast | both");
    c_bench->add_option("--seconds", bench.seconds, "measurement time per variant");
    c_bench->add_option("--isa", bench.isa, "force kernel isa: scalar | sse2 | avx2 | neon");
    c_bench->callback([&] { run_bench(bench); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const IncompatibleAttackError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncompatible;
    } catch (const TraceFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
