#pragma once

#include <array>
#include <cstdint>

#include "scaw/block.hpp"
#include "scaw/kuznyechik.hpp" // Key256

namespace scaw {

/*
 * AES-256 encryption with full intermediate capture — the CPA positive
 * control. Only encryption: the last-round attack needs ciphertexts and
 * round-14 register activity, nothing else.
 *
 * Byte indexing in this module is FIPS wire order: index 0 is the first
 * byte of the block on the wire (Block stores that byte at b[15]).
 */

std::uint8_t aes_sbox(std::uint8_t v);
std::uint8_t aes_sbox_inv(std::uint8_t v);

/// Round keys 0..14, each 16 bytes in wire order.
struct AesKeySchedule {
    std::array<std::array<std::uint8_t, 16>, 15> rk;
};

AesKeySchedule aes256_key_schedule(const Key256& key);

struct AesRoundTrace {
    Block initial;                     // plaintext
    Block after_ark0;                  // after the initial AddRoundKey
    std::array<Block, 14> after_sub;   // rounds 1..14
    std::array<Block, 14> after_shift;
    std::array<Block, 13> after_mix;   // no MixColumns in round 14
    std::array<Block, 14> after_ark;   // after_ark[13] == ciphertext
    Block output;
};

Block aes256_encrypt(const Block& p, const Key256& key);
AesRoundTrace aes256_encrypt_with_trace(const Block& p, const Key256& key);

/// ShiftRows source position: the byte that lands at wire position j came
/// from wire position aes_shiftrows_src(j).
int aes_shiftrows_src(int j);

/// Last-round CPA hypothesis for the round-14 key byte at wire position
/// byte_index: HD between the ciphertext byte at the ShiftRows source
/// position and InvS(ciphertext byte at byte_index XOR guess) — the byte's
/// contribution to the round-13-state -> ciphertext register distance.
int aes_last_round_hypothesis(const Block& c, int byte_index, int guess);

} // namespace scaw
