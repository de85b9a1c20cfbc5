#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace scaw::kern {

/*
 * Runtime-dispatched inner loops. Every operation has a scalar reference
 * implementation plus SIMD variants selected by CPU detection at startup;
 * force_isa() pins a specific one (tests use it for equivalence checks,
 * bench for per-variant timing).
 *
 * Equivalence contract: for identical inputs, every ISA produces bit-identical
 * output. The float kernels keep one multiply and one add per element with
 * per-element accumulators (no lane reductions, no FMA), so this holds exactly;
 * the build sets -ffp-contract=off to keep the scalar path to the same shape.
 */

enum class Isa { scalar, sse2, avx2, neon };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();

/// Currently selected implementation set.
Isa active_isa();
/// Pin an implementation; throws std::invalid_argument if unsupported here.
void force_isa(Isa isa);
/// Return to the best implementation the CPU supports.
void reset_isa();

/// out = rows[0] ^ rows[1] ^ ... ^ rows[15], each row 16 bytes.
/// out must not alias any row.
void xor16_rows(const std::uint8_t* const rows[16], std::uint8_t out[16]);

/// acc[j] += w * x[j] for j in [0, n).
void axpy(double* acc, double w, const float* x, std::size_t n);

/// sum[j] += x[j]; sumsq[j] += x[j]*x[j] for j in [0, n).
void moments(double* sum, double* sumsq, const float* x, std::size_t n);

/// mn[j] = min(mn[j], x[j]); mx[j] = max(mx[j], x[j]) for j in [0, n).
void minmax(float* mn, float* mx, const float* x, std::size_t n);

} // namespace scaw::kern
