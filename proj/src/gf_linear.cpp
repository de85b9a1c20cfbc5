#include "scaw/gf_linear.hpp"

#include <stdexcept>

#include "scaw/kernels.hpp"

namespace scaw {

const std::uint8_t kLCoeff[16] = {
    // coefficient multiplying x_i in l(), for i = 0..15
    1, 148, 32, 133, 16, 194, 192, 1, 251, 1, 192, 194, 16, 133, 32, 148,
};

std::uint8_t gf_mul_slow(std::uint8_t a, std::uint8_t b) {
    std::uint8_t acc = 0;
    while (b) {
        if (b & 1) acc ^= a;
        // x^8 = x^7 + x^6 + x + 1  (p(x) = 0x1C3)
        std::uint8_t carry = a & 0x80;
        a <<= 1;
        if (carry) a ^= 0xc3;
        b >>= 1;
    }
    return acc;
}

namespace {

struct MulTable {
    std::uint8_t t[256][256];
    MulTable() {
        for (int a = 0; a < 256; ++a)
            for (int b = 0; b < 256; ++b)
                t[a][b] = gf_mul_slow(static_cast<std::uint8_t>(a),
                                      static_cast<std::uint8_t>(b));
    }
};

const MulTable& mul_table() {
    static const MulTable tbl;
    return tbl;
}

} // namespace

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) { return mul_table().t[a][b]; }

std::uint8_t little_l(const Block& x) {
    const auto& t = mul_table().t;
    std::uint8_t acc = 0;
    for (int i = 0; i < 16; ++i) acc ^= t[kLCoeff[i]][x.b[i]];
    return acc;
}

Block big_r(const Block& x) {
    Block out;
    for (int i = 0; i < 15; ++i) out.b[i] = x.b[i + 1];
    out.b[15] = little_l(x);
    return out;
}

Block big_r_inv(const Block& x) {
    // Undo the shift, then solve l(y) = x15 for the byte that re-enters at y0.
    Block y;
    for (int i = 1; i < 16; ++i) y.b[i] = x.b[i - 1];
    y.b[0] = 0;
    // kLCoeff[0] == 1, so y0 = x15 ^ l(y with y0=0)
    y.b[0] = static_cast<std::uint8_t>(x.b[15] ^ little_l(y));
    return y;
}

Block big_l_ref(const Block& x) {
    Block y = x;
    for (int i = 0; i < 16; ++i) y = big_r(y);
    return y;
}

Block big_l_inv_ref(const Block& x) {
    Block y = x;
    for (int i = 0; i < 16; ++i) y = big_r_inv(y);
    return y;
}

namespace {

// fused[pos][v] = L(e_pos * v) — L is linear over GF(2), so
// L(x) = XOR over pos of fused[pos][x.b[pos]].
struct FusedL {
    Block fwd[16][256];
    Block inv[16][256];
    FusedL() {
        for (int pos = 0; pos < 16; ++pos) {
            for (int v = 0; v < 256; ++v) {
                Block e{};
                e.b[pos] = static_cast<std::uint8_t>(v);
                fwd[pos][v] = big_l_ref(e);
                inv[pos][v] = big_l_inv_ref(e);
            }
        }
    }
};

const FusedL& fused_l() {
    static const FusedL tbl;
    return tbl;
}

Block apply_fused(const Block (*tbl)[256], const Block& x) {
    const std::uint8_t* rows[16];
    for (int pos = 0; pos < 16; ++pos) rows[pos] = tbl[pos][x.b[pos]].b.data();
    Block out;
    kern::xor16_rows(rows, out.b.data());
    return out;
}

} // namespace

Block big_l(const Block& x) { return apply_fused(fused_l().fwd, x); }
Block big_l_inv(const Block& x) { return apply_fused(fused_l().inv, x); }

Block big_l_pow(const Block& x, int n) {
    if (n < 0) throw std::invalid_argument("big_l_pow: negative exponent");
    Block y = x;
    for (int i = 0; i < n; ++i) y = big_l(y);
    return y;
}

const Block (*fused_l_table())[256] { return fused_l().fwd; }
const Block (*fused_l_inv_table())[256] { return fused_l().inv; }

} // namespace scaw
