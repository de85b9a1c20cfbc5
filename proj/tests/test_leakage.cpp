#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "scaw/block.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/leakage.hpp"
#include "scaw/masking.hpp"
#include "scaw/rng.hpp"

using namespace scaw;

namespace {

const char* const kStdKey =
    "8899aabbccddeeff0011223344556677fedcba98765432100123456789abcdef";

LeakageConfig quiet_hd() {
    LeakageConfig cfg;
    cfg.model = LeakModel::hamming_distance;
    cfg.sigma = 0.0;
    return cfg;
}

} // namespace

TEST_CASE("config validation") {
    LeakageConfig cfg;
    cfg.validate(); // defaults are fine
    cfg.sigma = -0.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = LeakageConfig{};
    cfg.samples_per_event = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = LeakageConfig{};
    cfg.model = LeakModel::single_bit;
    cfg.bit_index = 128;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.bit_index = 127;
    cfg.validate();
}

TEST_CASE("leak_value noiseless cases") {
    GaussianSource noise(1);
    LeakageConfig cfg;
    cfg.sigma = 0.0;
    cfg.beta = 2.5;

    Block zero;
    cfg.model = LeakModel::hamming_weight;
    CHECK(leak_value(zero, zero, cfg, noise) == 2.5); // HW(0) = 0 -> beta

    cfg.model = LeakModel::hamming_distance;
    const Block x = block_from_hex("0123456789abcdef0011223344556677");
    CHECK(leak_value(x, x, cfg, noise) == 2.5); // zero distance -> beta

    cfg.beta = 0.0;
    Block lo, hi;
    lo.b.fill(0x0f);
    hi.b.fill(0xf0);
    CHECK(leak_value(lo, hi, cfg, noise) == 128.0); // 8 bits x 16 bytes

    cfg.alpha = 0.25;
    cfg.beta = -1.0;
    CHECK(leak_value(lo, hi, cfg, noise) == 0.25 * 128.0 - 1.0);

    cfg = quiet_hd();
    cfg.model = LeakModel::single_bit;
    cfg.bit_index = 13; // byte 1, bit 5
    Block y;
    y.b[1] = 0x20;
    CHECK(leak_value(zero, y, cfg, noise) == 1.0);
    y.b[1] = 0x10;
    CHECK(leak_value(zero, y, cfg, noise) == 0.0);
}

TEST_CASE("noise is reproducible and actually added") {
    LeakageConfig cfg;
    cfg.sigma = 1.0;
    GaussianSource n1(99), n2(99);
    const Block a = block_from_hex("000102030405060708090a0b0c0d0e0f");
    const Block b = block_from_hex("f0e0d0c0b0a090807060504030201000");
    const double v1 = leak_value(a, b, cfg, n1);
    CHECK(v1 == leak_value(a, b, cfg, n2));
    cfg.sigma = 0.0;
    GaussianSource n3(99);
    CHECK(v1 != leak_value(a, b, cfg, n3));
}

TEST_CASE("simulate_traces rejects bad inputs") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    CHECK_THROWS_AS(simulate_traces(opt, 0, quiet_hd()), std::invalid_argument);
    LeakageConfig bad = quiet_hd();
    bad.sigma = -1.0;
    CHECK_THROWS_AS(simulate_traces(opt, 2, bad), std::invalid_argument);
}

TEST_CASE("event maps per cipher") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg = quiet_hd();

    TraceSet kuz = simulate_traces(opt, 1, cfg);
    CHECK(kuz.event_map.size() == 43); // 32 keyexp + load + 9 rounds + final
    CHECK(kuz.samples_per_trace == 43);
    CHECK(kuz.event_offset("keyexp_1") == 0);
    CHECK(kuz.event_offset("keyexp_32") == 31);
    CHECK(kuz.event_offset("load") == 32);
    CHECK(kuz.event_offset("round_1") == 33);
    CHECK(kuz.event_offset("round_9") == 41);
    CHECK(kuz.event_offset("final_xor") == 42);
    CHECK_THROWS_AS(kuz.event_offset("unmask"), std::invalid_argument);
    CHECK_THROWS_AS(kuz.event_offset("round_10"), std::invalid_argument);

    opt.cipher = CipherId::kuznyechik_masked;
    TraceSet masked = simulate_traces(opt, 1, cfg);
    CHECK(masked.event_map.size() == 44);
    CHECK(masked.event_offset("unmask") == 43);

    opt.cipher = CipherId::aes256;
    TraceSet aes = simulate_traces(opt, 1, cfg);
    CHECK(aes.event_map.size() == 16);
    CHECK(aes.event_offset("load") == 0);
    CHECK(aes.event_offset("round_0") == 1);
    CHECK(aes.event_offset("round_14") == 15);

    // alignment: offsets identical across traces by construction (one map
    // shared by the set), and scaled by samples_per_event
    cfg.samples_per_event = 3;
    TraceSet wide = simulate_traces(opt, 2, cfg);
    CHECK(wide.samples_per_trace == 48);
    CHECK(wide.event_offset("round_14") == 45);
    CHECK(wide.traces[0].samples.size() == 48);
}

TEST_CASE("determinism: identical inputs give bit-identical sets") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg;
    cfg.sigma = 2.0;
    cfg.seed = 424242;
    const TraceSet a = simulate_traces(opt, 50, cfg);
    const TraceSet b = simulate_traces(opt, 50, cfg);
    REQUIRE(a.traces.size() == b.traces.size());
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
        REQUIRE(a.traces[i].pt == b.traces[i].pt);
        REQUIRE(a.traces[i].ct == b.traces[i].ct);
        REQUIRE(a.traces[i].samples == b.traces[i].samples);
    }
    cfg.seed = 424243;
    const TraceSet c = simulate_traces(opt, 50, cfg);
    CHECK(a.traces[0].samples != c.traces[0].samples);
    CHECK(a.key_fingerprint ==
          fnv1a64(std::span<const std::uint8_t>(opt.key.k)));
}

TEST_CASE("prefix property: the first traces do not depend on n") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg;
    cfg.sigma = 1.0;
    cfg.seed = 7;
    const TraceSet small = simulate_traces(opt, 20, cfg);
    const TraceSet big = simulate_traces(opt, 60, cfg);
    for (std::size_t i = 0; i < 20; ++i) {
        REQUIRE(small.traces[i].pt == big.traces[i].pt);
        REQUIRE(small.traces[i].samples == big.traces[i].samples);
    }
}

TEST_CASE("noiseless samples recompute from the captured intermediates") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg = quiet_hd();
    cfg.alpha = 2.0;
    cfg.beta = -3.0;
    const TraceSet ts = simulate_traces(opt, 4, cfg);
    const RoundKeySet rk = key_schedule(opt.key);

    std::vector<KeyScheduleStep> steps;
    key_schedule(opt.key, &steps);

    for (const Trace& t : ts.traces) {
        REQUIRE(t.ct == encrypt(t.pt, rk));
        const RoundTrace tr = encrypt_with_trace(t.pt, rk);
        auto at = [&](const char* label) {
            return t.samples[ts.event_offset(label)];
        };
        auto model = [&](const Block& prev, const Block& curr) {
            return static_cast<float>(2.0 * hamming_distance(prev, curr) - 3.0);
        };
        // key expansion: the a1 register walks k1 -> Feistel outputs
        REQUIRE(at("keyexp_1") == model(rk.k[0], steps[0].new_a1));
        for (int j = 2; j <= 32; ++j)
            REQUIRE(t.samples[ts.event_offset("keyexp_" + std::to_string(j))] ==
                    model(steps[j - 2].new_a1, steps[j - 1].new_a1));
        REQUIRE(at("load") == model(Block{}, t.pt));
        REQUIRE(at("round_1") == model(t.pt, tr.after_l[0]));
        for (int r = 2; r <= 9; ++r)
            REQUIRE(t.samples[ts.event_offset("round_" + std::to_string(r))] ==
                    model(tr.after_l[r - 2], tr.after_l[r - 1]));
        REQUIRE(at("final_xor") == model(tr.after_l[8], t.ct));
        // ... which is constant HW(k10): the structural dead end
        REQUIRE(at("final_xor") ==
                static_cast<float>(2.0 * hamming_weight(rk.k[9]) - 3.0));
    }
}

TEST_CASE("masked traces leak masked registers and end with unmask") {
    SimOptions opt;
    opt.cipher = CipherId::kuznyechik_masked;
    opt.key = key_from_hex(kStdKey);
    opt.mask_seed = 31337;
    LeakageConfig cfg = quiet_hd();
    const TraceSet ts = simulate_traces(opt, 3, cfg);
    const RoundKeySet rk = key_schedule(opt.key);

    // per-key masking (the default): one mask drawn from the seed
    MaskGenerator gen(opt.mask_seed);
    const MaskSchedule ms = build_mask_schedule(fresh_mask(gen));

    for (const Trace& t : ts.traces) {
        REQUIRE(t.ct == encrypt(t.pt, rk)); // ciphertext is never masked
        const MaskedRoundTrace tr = masked_encrypt_with_trace(t.pt, rk, ms);
        auto at = [&](const std::string& label) {
            return t.samples[ts.event_offset(label)];
        };
        REQUIRE(at("load") ==
                static_cast<float>(hamming_distance(Block{}, tr.initial_masked)));
        REQUIRE(at("round_1") == static_cast<float>(hamming_distance(
                                     tr.initial_masked, tr.after_l[0])));
        REQUIRE(at("final_xor") ==
                static_cast<float>(hamming_distance(tr.after_l[8],
                                                    tr.after_final_x_masked)));
        REQUIRE(at("unmask") ==
                static_cast<float>(
                    hamming_distance(tr.after_final_x_masked, t.ct)));
    }
}

TEST_CASE("per-block remasking changes intermediates, never ciphertexts") {
    SimOptions opt;
    opt.cipher = CipherId::kuznyechik_masked;
    opt.key = key_from_hex(kStdKey);
    opt.mask_seed = 5;
    LeakageConfig cfg = quiet_hd();

    const TraceSet per_key = simulate_traces(opt, 40, cfg);
    opt.remask_per_block = true;
    const TraceSet per_block = simulate_traces(opt, 40, cfg);

    const RoundKeySet rk = key_schedule(opt.key);
    bool any_sample_differs = false;
    for (std::size_t i = 0; i < 40; ++i) {
        REQUIRE(per_key.traces[i].pt == per_block.traces[i].pt);
        REQUIRE(per_block.traces[i].ct == encrypt(per_block.traces[i].pt, rk));
        any_sample_differs = any_sample_differs ||
                             per_key.traces[i].samples != per_block.traces[i].samples;
    }
    CHECK(any_sample_differs);

    // per-key: every load sample is HW(p ^ m) for the one seed-derived mask
    MaskGenerator gen(opt.mask_seed);
    const Block m = fresh_mask(gen);
    bool per_block_deviates = false;
    for (std::size_t i = 0; i < 40; ++i) {
        const float fixed_mask_load =
            static_cast<float>(hamming_weight(per_key.traces[i].pt ^ m));
        REQUIRE(per_key.traces[i].samples[per_key.event_offset("load")] ==
                fixed_mask_load);
        per_block_deviates =
            per_block_deviates ||
            per_block.traces[i].samples[per_block.event_offset("load")] !=
                fixed_mask_load;
    }
    CHECK(per_block_deviates);
}

TEST_CASE("sigma grows per-sample variance by about sigma squared") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);

    LeakageConfig quiet = quiet_hd();
    quiet.seed = 2024;
    LeakageConfig noisy = quiet;
    noisy.sigma = 4.0;

    const TraceSet a = simulate_traces(opt, 1000, quiet);
    const TraceSet b = simulate_traces(opt, 1000, noisy);
    const std::uint32_t j = a.event_offset("round_5");

    auto variance = [&](const TraceSet& ts) {
        double sum = 0.0, sumsq = 0.0;
        for (const Trace& t : ts.traces) {
            sum += t.samples[j];
            sumsq += static_cast<double>(t.samples[j]) * t.samples[j];
        }
        const double n = static_cast<double>(ts.traces.size());
        return sumsq / n - (sum / n) * (sum / n);
    };
    const double growth = variance(b) - variance(a);
    CHECK(growth > 14.0); // sigma^2 = 16, +/- 2
    CHECK(growth < 18.0);
}

TEST_CASE("single-bit model traces") {
    SimOptions opt;
    opt.key = key_from_hex(kStdKey);
    LeakageConfig cfg = quiet_hd();
    cfg.model = LeakModel::single_bit;
    cfg.bit_index = 7; // MSB of b[0]
    const TraceSet ts = simulate_traces(opt, 10, cfg);
    for (const Trace& t : ts.traces) {
        const float v = t.samples[ts.event_offset("load")];
        REQUIRE((v == 0.0f || v == 1.0f));
        REQUIRE(v == static_cast<float>((t.pt.b[0] >> 7) & 1));
    }
}
