#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "scaw/block.hpp"

namespace scaw {

/*
 * Grasshopper (GOST R 34.12-2015 "Kuznyechik"): 128-bit block, 256-bit key,
 * 9 full rounds of X (subkey XOR), S (byte substitution), L (linear layer),
 * then a final subkey XOR.
 */

extern const std::uint8_t kSbox[256];
extern const std::array<std::uint8_t, 256> kSboxInv;

inline std::uint8_t sbox(std::uint8_t v) { return kSbox[v]; }
inline std::uint8_t sbox_inv(std::uint8_t v) { return kSboxInv[v]; }

/// S layer: byte-wise substitution through S' (resp. its inverse).
Block s_layer(const Block& x);
Block s_layer_inv(const Block& x);

/// X layer: subkey XOR (an involution).
inline Block x_layer(const Block& x, const Block& k) { return x ^ k; }

struct Key256 {
    std::array<std::uint8_t, 32> k{}; // wire order: k[0] is the MS byte

    friend bool operator==(const Key256&, const Key256&) = default;
};

Key256 key_from_hex(std::string_view hex);
std::string to_hex(const Key256& key);

struct RoundKeySet {
    std::array<Block, 10> k;
};

/// Key-schedule round constants C_1..C_32: C_j = L(Vec(j)).
const std::array<Block, 32>& schedule_constants();

/// Detail of one Feistel step of the key schedule, captured for leakage
/// simulation: the step output that lands in the "a1" register.
struct KeyScheduleStep {
    Block new_a1; // LSX[C_j](a1) ^ a0
};

RoundKeySet key_schedule(const Key256& key,
                         std::vector<KeyScheduleStep>* steps = nullptr);

/// Rebuilds the master key from any derived subkey pair by running the
/// Feistel steps backwards. pair_index 1 means (k3, k4), up to pair_index 4
/// for (k9, k10). Throws std::invalid_argument outside 1..4.
Key256 recover_master_from_pair(const Block& odd, const Block& even,
                                int pair_index);

/// Straightforward per-layer implementation; the oracle the fused path is
/// checked against.
Block encrypt_ref(const Block& pt, const RoundKeySet& rk);
Block decrypt_ref(const Block& ct, const RoundKeySet& rk);

/// Fused-table implementation: S and L of each round collapse into 16 table
/// lookups XORed together.
Block encrypt_fast(const Block& pt, const RoundKeySet& rk);
Block decrypt_fast(const Block& ct, const RoundKeySet& rk);

inline Block encrypt(const Block& pt, const RoundKeySet& rk) {
    return encrypt_fast(pt, rk);
}
inline Block decrypt(const Block& ct, const RoundKeySet& rk) {
    return decrypt_fast(ct, rk);
}

/// Full intermediate-state capture for one encryption.
struct RoundTrace {
    Block initial;                  // plaintext
    std::array<Block, 9> after_x;   // state after the round-i subkey XOR
    std::array<Block, 9> after_s;   // ... after the substitution
    std::array<Block, 9> after_l;   // ... after the linear layer
    Block after_final_x;            // ciphertext
    Block output;                   // == after_final_x
    std::array<Block, 32> keyexp{}; // Feistel-step register values
    bool has_keyexp = false;        // set by the master-key overload
};

RoundTrace encrypt_with_trace(const Block& pt, const RoundKeySet& rk);

/// Runs the key schedule itself and captures its 32 register values too.
RoundTrace encrypt_with_trace(const Block& pt, const Key256& key);

/// fused_sl[pos][v] = L(block with S'[v] at position pos); shared with the
/// masking code, which builds shifted copies of it.
const Block (*fused_sl_table())[256];

} // namespace scaw
