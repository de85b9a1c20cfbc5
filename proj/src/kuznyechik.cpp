#include "scaw/kuznyechik.hpp"

#include <stdexcept>

#include "scaw/gf_linear.hpp"
#include "scaw/kernels.hpp"

namespace scaw {

const std::uint8_t kSbox[256] = {
    252, 238, 221, 17,  207, 110, 49,  22,  251, 196, 250, 218, 35,  197, 4,   77,
    233, 119, 240, 219, 147, 46,  153, 186, 23,  54,  241, 187, 20,  205, 95,  193,
    249, 24,  101, 90,  226, 92,  239, 33,  129, 28,  60,  66,  139, 1,   142, 79,
    5,   132, 2,   174, 227, 106, 143, 160, 6,   11,  237, 152, 127, 212, 211, 31,
    235, 52,  44,  81,  234, 200, 72,  171, 242, 42,  104, 162, 253, 58,  206, 204,
    181, 112, 14,  86,  8,   12,  118, 18,  191, 114, 19,  71,  156, 183, 93,  135,
    21,  161, 150, 41,  16,  123, 154, 199, 243, 145, 120, 111, 157, 158, 178, 177,
    50,  117, 25,  61,  255, 53,  138, 126, 109, 84,  198, 128, 195, 189, 13,  87,
    223, 245, 36,  169, 62,  168, 67,  201, 215, 121, 214, 246, 124, 34,  185, 3,
    224, 15,  236, 222, 122, 148, 176, 188, 220, 232, 40,  80,  78,  51,  10,  74,
    167, 151, 96,  115, 30,  0,   98,  68,  26,  184, 56,  130, 100, 159, 38,  65,
    173, 69,  70,  146, 39,  94,  85,  47,  140, 163, 165, 125, 105, 213, 149, 59,
    7,   88,  179, 64,  134, 172, 29,  247, 48,  55,  107, 228, 136, 217, 231, 137,
    225, 27,  131, 73,  76,  63,  248, 254, 141, 83,  170, 144, 202, 216, 133, 97,
    32,  113, 103, 164, 45,  43,  9,   91,  203, 155, 37,  208, 190, 229, 108, 82,
    89,  166, 116, 210, 230, 244, 180, 192, 209, 102, 175, 194, 57,  75,  99,  182,
};

const std::array<std::uint8_t, 256> kSboxInv = [] {
    std::array<std::uint8_t, 256> t{};
    for (int i = 0; i < 256; ++i) t[kSbox[i]] = static_cast<std::uint8_t>(i);
    return t;
}();

Block s_layer(const Block& x) {
    Block y;
    for (int i = 0; i < 16; ++i) y.b[i] = kSbox[x.b[i]];
    return y;
}

Block s_layer_inv(const Block& x) {
    Block y;
    for (int i = 0; i < 16; ++i) y.b[i] = kSboxInv[x.b[i]];
    return y;
}

Key256 key_from_hex(std::string_view hex) {
    Key256 key;
    hex_to_bytes(hex, key.k);
    return key;
}

std::string to_hex(const Key256& key) { return bytes_to_hex(key.k); }

const std::array<Block, 32>& schedule_constants() {
    static const std::array<Block, 32> consts = [] {
        std::array<Block, 32> c{};
        for (int j = 1; j <= 32; ++j) {
            Block v{};
            v.b[0] = static_cast<std::uint8_t>(j); // Vec_128(j)
            c[j - 1] = big_l(v);
        }
        return c;
    }();
    return consts;
}

namespace {

Block lsx(const Block& k, const Block& a) { return big_l(s_layer(k ^ a)); }

} // namespace

RoundKeySet key_schedule(const Key256& key, std::vector<KeyScheduleStep>* steps) {
    RoundKeySet rk;
    // Master key splits as K = k1 || k2 in wire order.
    Block a1 = block_from_wire(std::span<const std::uint8_t, 16>(key.k.data(), 16));
    Block a0 = block_from_wire(std::span<const std::uint8_t, 16>(key.k.data() + 16, 16));
    rk.k[0] = a1;
    rk.k[1] = a0;
    const auto& c = schedule_constants();
    for (int pair = 0; pair < 4; ++pair) {
        for (int step = 0; step < 8; ++step) {
            Block new_a1 = lsx(c[pair * 8 + step], a1) ^ a0;
            a0 = a1;
            a1 = new_a1;
            if (steps) steps->push_back({new_a1});
        }
        rk.k[2 * pair + 2] = a1;
        rk.k[2 * pair + 3] = a0;
    }
    return rk;
}

Key256 recover_master_from_pair(const Block& odd, const Block& even,
                                int pair_index) {
    if (pair_index < 1 || pair_index > 4)
        throw std::invalid_argument("pair_index must be in 1..4");
    Block a1 = odd, a0 = even;
    const auto& c = schedule_constants();
    // Invert F[C_j](a1,a0) = (LSX[C_j](a1)^a0, a1): given (b1,b0) the
    // pre-image is (b0, LSX[C_j](b0)^b1).
    for (int j = pair_index * 8 - 1; j >= 0; --j) {
        Block prev_a1 = a0;
        Block prev_a0 = lsx(c[j], a0) ^ a1;
        a1 = prev_a1;
        a0 = prev_a0;
    }
    Key256 key;
    block_to_wire(a1, std::span<std::uint8_t, 16>(key.k.data(), 16));
    block_to_wire(a0, std::span<std::uint8_t, 16>(key.k.data() + 16, 16));
    return key;
}

Block encrypt_ref(const Block& pt, const RoundKeySet& rk) {
    Block s = pt;
    for (int r = 0; r < 9; ++r) s = big_l(s_layer(s ^ rk.k[r]));
    return s ^ rk.k[9];
}

Block decrypt_ref(const Block& ct, const RoundKeySet& rk) {
    Block s = ct ^ rk.k[9];
    for (int r = 8; r >= 0; --r) s = s_layer_inv(big_l_inv(s)) ^ rk.k[r];
    return s;
}

namespace {

// fused_sl[pos][v] = L(e_pos * S'[v]): one round's S+L collapses to 16
// lookups XORed together.
struct FusedSL {
    Block fwd[16][256];
    FusedSL() {
        const Block(*l_tbl)[256] = fused_l_table();
        for (int pos = 0; pos < 16; ++pos)
            for (int v = 0; v < 256; ++v) fwd[pos][v] = l_tbl[pos][kSbox[v]];
    }
};

const FusedSL& fused_sl() {
    static const FusedSL tbl;
    return tbl;
}

inline Block apply16(const Block (*tbl)[256], const Block& x) {
    const std::uint8_t* rows[16];
    for (int pos = 0; pos < 16; ++pos) rows[pos] = tbl[pos][x.b[pos]].b.data();
    Block out;
    kern::xor16_rows(rows, out.b.data());
    return out;
}

} // namespace

Block encrypt_fast(const Block& pt, const RoundKeySet& rk) {
    const Block(*tbl)[256] = fused_sl().fwd;
    Block s = pt;
    for (int r = 0; r < 9; ++r) s = apply16(tbl, s ^ rk.k[r]);
    return s ^ rk.k[9];
}

Block decrypt_fast(const Block& ct, const RoundKeySet& rk) {
    // The inverse round is S^-1 after L^-1; L^-1 fuses into tables, the byte
    // substitution then applies to the recombined state, so the win is
    // smaller than forward — still table-driven.
    const Block(*linv)[256] = fused_l_inv_table();
    Block s = ct ^ rk.k[9];
    for (int r = 8; r >= 0; --r) s = s_layer_inv(apply16(linv, s)) ^ rk.k[r];
    return s;
}

RoundTrace encrypt_with_trace(const Block& pt, const RoundKeySet& rk) {
    RoundTrace tr;
    tr.initial = pt;
    Block s = pt;
    for (int r = 0; r < 9; ++r) {
        s ^= rk.k[r];
        tr.after_x[r] = s;
        s = s_layer(s);
        tr.after_s[r] = s;
        s = big_l(s);
        tr.after_l[r] = s;
    }
    s ^= rk.k[9];
    tr.after_final_x = s;
    tr.output = s;
    return tr;
}

RoundTrace encrypt_with_trace(const Block& pt, const Key256& key) {
    std::vector<KeyScheduleStep> steps;
    RoundKeySet rk = key_schedule(key, &steps);
    RoundTrace tr = encrypt_with_trace(pt, rk);
    for (std::size_t i = 0; i < 32; ++i) tr.keyexp[i] = steps[i].new_a1;
    tr.has_keyexp = true;
    return tr;
}

const Block (*fused_sl_table())[256] { return fused_sl().fwd; }

} // namespace scaw
