#include "scaw/kernels.hpp"

#include <cstring>
#include <stdexcept>

#include "kernels_internal.hpp"

namespace scaw::kern {

namespace detail {

namespace {

void xor16_rows_scalar(const std::uint8_t* const rows[16], std::uint8_t out[16]) {
    std::uint64_t lo = 0, hi = 0;
    for (int i = 0; i < 16; ++i) {
        std::uint64_t rlo, rhi;
        std::memcpy(&rlo, rows[i], 8);
        std::memcpy(&rhi, rows[i] + 8, 8);
        lo ^= rlo;
        hi ^= rhi;
    }
    std::memcpy(out, &lo, 8);
    std::memcpy(out + 8, &hi, 8);
}

void axpy_scalar(double* acc, double w, const float* x, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) acc[j] += w * static_cast<double>(x[j]);
}

void moments_scalar(double* sum, double* sumsq, const float* x, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double v = static_cast<double>(x[j]);
        sum[j] += v;
        sumsq[j] += v * v;
    }
}

void minmax_scalar(float* mn, float* mx, const float* x, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        if (x[j] < mn[j]) mn[j] = x[j];
        if (x[j] > mx[j]) mx[j] = x[j];
    }
}

const Ops kScalarOps = {xor16_rows_scalar, axpy_scalar, moments_scalar,
                        minmax_scalar};

const Ops* ops_for(Isa isa) {
    switch (isa) {
        case Isa::scalar: return &kScalarOps;
        case Isa::sse2: return sse2_ops();
        case Isa::avx2: return avx2_ops();
        case Isa::neon: return neon_ops();
    }
    return nullptr;
}

Isa best_isa() {
    if (ops_for(Isa::avx2)) return Isa::avx2;
    if (ops_for(Isa::neon)) return Isa::neon;
    if (ops_for(Isa::sse2)) return Isa::sse2;
    return Isa::scalar;
}

struct State {
    Isa isa;
    const Ops* ops;
    State() : isa(best_isa()), ops(ops_for(isa)) {}
};

State& state() {
    static State s;
    return s;
}

} // namespace

#if !defined(__x86_64__) && !defined(__i386__)
const Ops* sse2_ops() { return nullptr; }
const Ops* avx2_ops() { return nullptr; }
#endif
#if !defined(__aarch64__)
const Ops* neon_ops() { return nullptr; }
#endif

} // namespace detail

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::sse2: return "sse2";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "?";
}

bool isa_supported(Isa isa) { return detail::ops_for(isa) != nullptr; }

std::vector<Isa> supported_isas() {
    std::vector<Isa> v;
    for (Isa isa : {Isa::scalar, Isa::sse2, Isa::avx2, Isa::neon})
        if (isa_supported(isa)) v.push_back(isa);
    return v;
}

Isa active_isa() { return detail::state().isa; }

void force_isa(Isa isa) {
    const detail::Ops* ops = detail::ops_for(isa);
    if (!ops)
        throw std::invalid_argument(std::string("isa not supported on this host: ") +
                                    isa_name(isa));
    detail::state().isa = isa;
    detail::state().ops = ops;
}

void reset_isa() { force_isa(detail::best_isa()); }

void xor16_rows(const std::uint8_t* const rows[16], std::uint8_t out[16]) {
    detail::state().ops->xor16_rows(rows, out);
}

void axpy(double* acc, double w, const float* x, std::size_t n) {
    detail::state().ops->axpy(acc, w, x, n);
}

void moments(double* sum, double* sumsq, const float* x, std::size_t n) {
    detail::state().ops->moments(sum, sumsq, x, n);
}

void minmax(float* mn, float* mx, const float* x, std::size_t n) {
    detail::state().ops->minmax(mn, mx, x, n);
}

} // namespace scaw::kern
