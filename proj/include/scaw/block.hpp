#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>

namespace scaw {

/*
 * 128-bit cipher state.
 *
 * Byte order convention, fixed project-wide: b[i] is the byte usually
 * written x_i, so b[15] is the most significant (leftmost) byte of the
 * hex form and b[0] the least significant. Hex strings and all wire
 * formats (trace files, CLI) carry the most significant byte first,
 * i.e. the reverse of the array order.
 */
struct Block {
    std::array<std::uint8_t, 16> b{};

    std::uint8_t& operator[](std::size_t i) { return b[i]; }
    const std::uint8_t& operator[](std::size_t i) const { return b[i]; }

    friend bool operator==(const Block&, const Block&) = default;

    Block& operator^=(const Block& o) {
        for (std::size_t i = 0; i < 16; ++i) b[i] ^= o.b[i];
        return *this;
    }
    friend Block operator^(Block a, const Block& c) { return a ^= c; }
};

inline int hamming_weight(std::uint8_t v) { return __builtin_popcount(v); }

inline int hamming_weight(const Block& x) {
    std::uint64_t lo, hi;
    std::memcpy(&lo, x.b.data(), 8);
    std::memcpy(&hi, x.b.data() + 8, 8);
    return __builtin_popcountll(lo) + __builtin_popcountll(hi);
}

inline int hamming_distance(std::uint8_t a, std::uint8_t c) {
    return hamming_weight(static_cast<std::uint8_t>(a ^ c));
}

inline int hamming_distance(const Block& a, const Block& c) {
    return hamming_weight(a ^ c);
}

/// Parses 2n lowercase/uppercase hex chars, most significant byte first.
/// Throws std::invalid_argument on bad length or charset.
void hex_to_bytes(std::string_view hex, std::span<std::uint8_t> out);
std::string bytes_to_hex(std::span<const std::uint8_t> in);

Block block_from_hex(std::string_view hex);
std::string to_hex(const Block& x);

/// Block <-> wire order (most significant byte first), used by hex and files.
Block block_from_wire(std::span<const std::uint8_t, 16> wire);
void block_to_wire(const Block& x, std::span<std::uint8_t, 16> wire);

/// FNV-1a 64-bit, used for key fingerprints in trace files.
std::uint64_t fnv1a64(std::span<const std::uint8_t> data);

} // namespace scaw
