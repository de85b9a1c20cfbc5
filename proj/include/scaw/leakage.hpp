#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scaw/block.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/rng.hpp"

namespace scaw {

/*
 * Trace synthesis. A hardware monitor sees one 128-bit state register per
 * target; every register update is an "event" emitting samples_per_event
 * samples of alpha * model(prev, curr) + beta + N(0, sigma^2).
 *
 * Event timelines:
 *   kuznyechik         keyexp_1..keyexp_32, load, round_1..round_9, final_xor
 *   kuznyechik-masked  the same + unmask (register values are the masked ones)
 *   aes256             load, round_0 (initial key XOR), round_1..round_14
 *
 * The register holds the round-granular datapath state: 0 before load, the
 * (masked) plaintext after load, each round's output after its event, the
 * ciphertext after the final XOR. Key-expansion events track the Feistel a1
 * register.
 */

enum class CipherId : std::uint8_t {
    kuznyechik = 0,
    kuznyechik_masked = 1,
    aes256 = 2,
};

const char* cipher_name(CipherId id);

enum class LeakModel : std::uint8_t {
    hamming_weight = 0,
    hamming_distance = 1,
    single_bit = 2,
};

const char* model_name(LeakModel m);

struct LeakageConfig {
    LeakModel model = LeakModel::hamming_distance;
    std::uint8_t bit_index = 0; // single_bit only; 0..127 within the register
    double alpha = 1.0;
    double beta = 0.0;
    double sigma = 1.0;
    std::uint32_t samples_per_event = 1;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on sigma < 0, samples_per_event < 1, or
    /// bit_index > 127.
    void validate() const;
};

/// One modeled sample: alpha * model(prev, curr) + beta + sigma * gaussian.
double leak_value(const Block& prev, const Block& curr, const LeakageConfig& cfg,
                  GaussianSource& noise);

struct EventMapEntry {
    std::string label;
    std::uint32_t offset; // first sample index of this event
};

struct Trace {
    Block pt;
    Block ct;
    std::vector<float> samples;
};

struct TraceSet {
    CipherId cipher = CipherId::kuznyechik;
    std::uint64_t key_fingerprint = 0; // fnv1a64 of the 32 key bytes
    LeakageConfig config;
    std::vector<EventMapEntry> event_map;
    std::uint32_t samples_per_trace = 0;
    std::vector<Trace> traces;

    /// Offset of the labeled event; throws std::invalid_argument if absent.
    std::uint32_t event_offset(std::string_view label) const;
};

struct SimOptions {
    CipherId cipher = CipherId::kuznyechik;
    Key256 key;
    std::uint64_t mask_seed = 0;   // kuznyechik_masked only
    bool remask_per_block = false; // default: one mask per key
};

/// n random-plaintext traces; deterministic in (options, n, cfg); per-trace
/// randomness derived from (seed, trace index) so any execution order gives
/// identical output. Throws std::invalid_argument on n < 1 or bad config.
TraceSet simulate_traces(const SimOptions& opt, std::size_t n,
                         const LeakageConfig& cfg);

} // namespace scaw
