#pragma once

#include <cstddef>
#include <cstdint>

namespace scaw::kern::detail {

// Per-ISA implementation sets. SIMD TUs fill these in when compiled for a
// matching architecture; null entries mean "not built on this platform".
struct Ops {
    void (*xor16_rows)(const std::uint8_t* const[16], std::uint8_t[16]);
    void (*axpy)(double*, double, const float*, std::size_t);
    void (*moments)(double*, double*, const float*, std::size_t);
    void (*minmax)(float*, float*, const float*, std::size_t);
};

// Each returns nullptr when the host CPU lacks the feature (or the TU was
// compiled out on a foreign architecture).
const Ops* sse2_ops();
const Ops* avx2_ops();
const Ops* neon_ops();

} // namespace scaw::kern::detail
