#include "scaw/aes256.hpp"

#include <cstring>

namespace scaw {

namespace {

// AES field: GF(2^8) mod x^8 + x^4 + x^3 + x + 1 (0x11B) — distinct from the
// Grasshopper field.
std::uint8_t xtime(std::uint8_t a) {
    return static_cast<std::uint8_t>((a << 1) ^ ((a & 0x80) ? 0x1b : 0));
}

std::uint8_t aes_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t acc = 0;
    while (b) {
        if (b & 1) acc ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return acc;
}

std::uint8_t rotl8(std::uint8_t v, int n) {
    return static_cast<std::uint8_t>((v << n) | (v >> (8 - n)));
}

// S(x) = affine(x^254): derived from the FIPS definition instead of a
// transcribed table; the published test vectors pin it down.
struct AesTables {
    std::uint8_t sbox[256];
    std::uint8_t inv_sbox[256];
    AesTables() {
        for (int x = 0; x < 256; ++x) {
            std::uint8_t inv = 0;
            if (x) {
                // x^254 = multiplicative inverse
                std::uint8_t base = static_cast<std::uint8_t>(x);
                inv = 1;
                int e = 254;
                std::uint8_t sq = base;
                while (e) {
                    if (e & 1) inv = aes_mul(inv, sq);
                    sq = aes_mul(sq, sq);
                    e >>= 1;
                }
            }
            std::uint8_t s = static_cast<std::uint8_t>(
                inv ^ rotl8(inv, 1) ^ rotl8(inv, 2) ^ rotl8(inv, 3) ^
                rotl8(inv, 4) ^ 0x63);
            sbox[x] = s;
        }
        for (int x = 0; x < 256; ++x) inv_sbox[sbox[x]] = static_cast<std::uint8_t>(x);
    }
};

const AesTables& tables() {
    static const AesTables t;
    return t;
}

using State = std::array<std::uint8_t, 16>; // wire order, column-major state

State to_state(const Block& x) {
    State s;
    block_to_wire(x, s);
    return s;
}

Block to_block(const State& s) {
    return block_from_wire(std::span<const std::uint8_t, 16>(s.data(), 16));
}

void add_round_key(State& s, const std::array<std::uint8_t, 16>& rk) {
    for (int i = 0; i < 16; ++i) s[i] ^= rk[i];
}

void sub_bytes(State& s) {
    for (auto& v : s) v = tables().sbox[v];
}

void shift_rows(State& s) {
    State in = s;
    for (int j = 0; j < 16; ++j) s[j] = in[aes_shiftrows_src(j)];
}

void mix_columns(State& s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t a0 = s[4 * c], a1 = s[4 * c + 1], a2 = s[4 * c + 2],
                     a3 = s[4 * c + 3];
        s[4 * c] = static_cast<std::uint8_t>(xtime(a0) ^ xtime(a1) ^ a1 ^ a2 ^ a3);
        s[4 * c + 1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ xtime(a2) ^ a2 ^ a3);
        s[4 * c + 2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ xtime(a3) ^ a3);
        s[4 * c + 3] = static_cast<std::uint8_t>(xtime(a0) ^ a0 ^ a1 ^ a2 ^ xtime(a3));
    }
}

} // namespace

std::uint8_t aes_sbox(std::uint8_t v) { return tables().sbox[v]; }
std::uint8_t aes_sbox_inv(std::uint8_t v) { return tables().inv_sbox[v]; }

int aes_shiftrows_src(int j) {
    int row = j & 3, col = j >> 2;
    return 4 * ((col + row) & 3) + row;
}

AesKeySchedule aes256_key_schedule(const Key256& key) {
    // Nk = 8, Nr = 14: 60 words.
    std::uint8_t w[60][4];
    std::memcpy(w, key.k.data(), 32);
    std::uint8_t rcon = 1;
    for (int i = 8; i < 60; ++i) {
        std::uint8_t t[4];
        std::memcpy(t, w[i - 1], 4);
        if (i % 8 == 0) {
            std::uint8_t first = t[0];
            t[0] = static_cast<std::uint8_t>(tables().sbox[t[1]] ^ rcon);
            t[1] = tables().sbox[t[2]];
            t[2] = tables().sbox[t[3]];
            t[3] = tables().sbox[first];
            rcon = xtime(rcon);
        } else if (i % 8 == 4) {
            for (auto& v : t) v = tables().sbox[v];
        }
        for (int k = 0; k < 4; ++k)
            w[i][k] = static_cast<std::uint8_t>(w[i - 8][k] ^ t[k]);
    }
    AesKeySchedule ks;
    for (int r = 0; r < 15; ++r) std::memcpy(ks.rk[r].data(), w[4 * r], 16);
    return ks;
}

AesRoundTrace aes256_encrypt_with_trace(const Block& p, const Key256& key) {
    AesKeySchedule ks = aes256_key_schedule(key);
    AesRoundTrace tr;
    tr.initial = p;
    State s = to_state(p);
    add_round_key(s, ks.rk[0]);
    tr.after_ark0 = to_block(s);
    for (int r = 1; r <= 14; ++r) {
        sub_bytes(s);
        tr.after_sub[r - 1] = to_block(s);
        shift_rows(s);
        tr.after_shift[r - 1] = to_block(s);
        if (r != 14) {
            mix_columns(s);
            tr.after_mix[r - 1] = to_block(s);
        }
        add_round_key(s, ks.rk[r]);
        tr.after_ark[r - 1] = to_block(s);
    }
    tr.output = to_block(s);
    return tr;
}

Block aes256_encrypt(const Block& p, const Key256& key) {
    return aes256_encrypt_with_trace(p, key).output;
}

int aes_last_round_hypothesis(const Block& c, int byte_index, int guess) {
    State cw = to_state(c);
    std::uint8_t target = static_cast<std::uint8_t>(cw[byte_index] ^ guess);
    return hamming_distance(cw[aes_shiftrows_src(byte_index)],
                            tables().inv_sbox[target]);
}

} // namespace scaw
