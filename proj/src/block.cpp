#include "scaw/block.hpp"

#include <stdexcept>

namespace scaw {

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

} // namespace

void hex_to_bytes(std::string_view hex, std::span<std::uint8_t> out) {
    if (hex.size() != out.size() * 2)
        throw std::invalid_argument("hex string must be exactly " +
                                    std::to_string(out.size() * 2) + " chars, got " +
                                    std::to_string(hex.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("invalid hex character in input");
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
}

std::string bytes_to_hex(std::span<const std::uint8_t> in) {
    std::string s(in.size() * 2, '0');
    for (std::size_t i = 0; i < in.size(); ++i) {
        s[2 * i] = kHexDigits[in[i] >> 4];
        s[2 * i + 1] = kHexDigits[in[i] & 0xf];
    }
    return s;
}

Block block_from_hex(std::string_view hex) {
    std::array<std::uint8_t, 16> wire;
    hex_to_bytes(hex, wire);
    return block_from_wire(wire);
}

std::string to_hex(const Block& x) {
    std::array<std::uint8_t, 16> wire;
    block_to_wire(x, wire);
    return bytes_to_hex(wire);
}

Block block_from_wire(std::span<const std::uint8_t, 16> wire) {
    Block x;
    for (std::size_t i = 0; i < 16; ++i) x.b[i] = wire[15 - i];
    return x;
}

void block_to_wire(const Block& x, std::span<std::uint8_t, 16> wire) {
    for (std::size_t i = 0; i < 16; ++i) wire[i] = x.b[15 - i];
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t byte : data) {
        h ^= byte;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace scaw
