#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scaw/block.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/rng.hpp"

namespace scaw {

/*
 * Boolean masking of the Grasshopper datapath. The state is XORed with a
 * random mask m before the first round; each round's S layer is replaced by
 * recoded tables satisfying S_m(x ^ m) = S(x) ^ m, so the mask rides through
 * S unchanged and through L linearly. After round i the state carries mask
 * L^i(m); the final ciphertext is unmasked with L^9(m).
 */

struct MaskSchedule {
    Block base_mask;                    // m
    std::array<Block, 9> round_masks;   // round_masks[i] = L^i(m); [0] = m
    Block final_mask;                   // L^9(m), removed after the last XOR

    // Masked S-box pool. A table depends only on its mask byte, so equal mask
    // bytes across rounds/positions share one table (at most 9*16 of them).
    std::vector<std::array<std::uint8_t, 256>> tables;
    std::array<std::array<std::uint16_t, 16>, 9> table_index;

    const std::uint8_t* table(int round, int pos) const {
        return tables[table_index[round][pos]].data();
    }
    std::size_t table_count() const { return tables.size(); }
};

/// Builds round masks L^{i-1}(m) and the masked S-box tables
/// T[v] = S'[v ^ mb] ^ mb for every distinct mask byte mb used.
MaskSchedule build_mask_schedule(const Block& m);

/// Same ciphertext as encrypt(); internally every intermediate is masked.
Block masked_encrypt(const Block& p, const RoundKeySet& rk,
                     const MaskSchedule& ms);

/// The masked register values of one encryption, as a leakage monitor would
/// see them; output is the true (unmasked) ciphertext.
struct MaskedRoundTrace {
    Block initial_masked;              // p ^ m
    std::array<Block, 9> after_x;      // masked state after each layer
    std::array<Block, 9> after_s;
    std::array<Block, 9> after_l;
    Block after_final_x_masked;        // c ^ L^9(m)
    Block output;                      // c
};

MaskedRoundTrace masked_encrypt_with_trace(const Block& p, const RoundKeySet& rk,
                                           const MaskSchedule& ms);

/// Deterministic mask source; not cryptographically strong, replayable by seed.
class MaskGenerator {
public:
    explicit MaskGenerator(std::uint64_t seed) : seed_(seed), rng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    Block next_mask() {
        Block m;
        for (int i = 0; i < 16; ++i) m.b[i] = rng_.next_byte();
        return m;
    }

private:
    std::uint64_t seed_;
    XorShift64Star rng_;
};

inline Block fresh_mask(MaskGenerator& gen) { return gen.next_mask(); }

} // namespace scaw
