#pragma once

#include <cstdint>

#include "scaw/block.hpp"

namespace scaw {

/*
 * Arithmetic in GF(2^8) modulo p(x) = x^8 + x^7 + x^6 + x + 1, and the
 * 16-byte linear layer built on it: the LFSR step R, its 16-fold power L,
 * and their inverses.
 */

/// Bit-serial shift-and-reduce product; the oracle the table path is checked
/// against.
std::uint8_t gf_mul_slow(std::uint8_t a, std::uint8_t b);

/// Table-backed product (64 KiB table built on first use).
std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b);

/// l(x_15..x_0): the linear recurrence feedback byte,
/// 148*x15 + 32*x14 + 133*x13 + 16*x12 + 194*x11 + 192*x10 + x9 + 251*x8
/// + x7 + 192*x6 + 194*x5 + 16*x4 + 133*x3 + 32*x2 + 148*x1 + x0.
std::uint8_t little_l(const Block& x);

extern const std::uint8_t kLCoeff[16]; // indexed by byte position 0..15

/// One LFSR step: shifts bytes down one position, feedback enters at b[15].
Block big_r(const Block& x);
Block big_r_inv(const Block& x);

/// L = R^16, computed by iterating R; the reference the fused path is checked
/// against.
Block big_l_ref(const Block& x);
Block big_l_inv_ref(const Block& x);

/// L via 16 precomputed 256-entry block tables: one table lookup and XOR per
/// input byte.
Block big_l(const Block& x);
Block big_l_inv(const Block& x);

/// L applied n times (n >= 0).
Block big_l_pow(const Block& x, int n);

/// Row-major table: fused_l[pos][v] = L(block with byte v at position pos).
/// Exposed so cipher and masking code can build combined S+L tables on top.
const Block (*fused_l_table())[256];
const Block (*fused_l_inv_table())[256];

} // namespace scaw
