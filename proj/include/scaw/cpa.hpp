#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scaw/block.hpp"
#include "scaw/kuznyechik.hpp"
#include "scaw/leakage.hpp"

namespace scaw {

/*
 * Correlation power analysis: Pearson distinguisher over (guess, sample)
 * cells, hypothesis models per attack, ranking by signed peak r over a sample
 * window. Zero-variance hypotheses or samples are flagged degenerate and
 * excluded from ranking instead of being coerced to a number — an attack
 * whose every hypothesis row is constant is reported structurally
 * infeasible, not merely unlucky.
 */

struct HypothesisMatrix {
    std::size_t n_traces = 0;
    std::vector<std::int8_t> v; // n_traces rows of 256 guesses

    std::int8_t at(std::size_t trace, int guess) const {
        return v[trace * 256 + static_cast<std::size_t>(guess)];
    }
};

struct CorrelationMatrix {
    std::uint32_t sample_base = 0; // absolute index of column 0
    std::size_t n_samples = 0;
    std::vector<double> r;                        // 256 x n_samples
    std::array<bool, 256> guess_degenerate{};     // zero-variance hypothesis
    std::vector<std::uint8_t> sample_degenerate;  // zero-variance column

    double at(int guess, std::size_t j) const {
        return r[static_cast<std::size_t>(guess) * n_samples + j];
    }
    bool cell_degenerate(int guess, std::size_t j) const {
        return guess_degenerate[static_cast<std::size_t>(guess)] ||
               sample_degenerate[j] != 0;
    }
};

/// Pearson r over every (guess, sample-in-[lo,hi)) cell, one pass.
/// sample_hi = 0 means "up to samples_per_trace". Throws
/// std::invalid_argument on count mismatch, fewer than 2 traces, or a bad
/// window.
CorrelationMatrix pearson_matrix(const HypothesisMatrix& h, const TraceSet& ts,
                                 std::uint32_t sample_lo = 0,
                                 std::uint32_t sample_hi = 0);

// ---- attack hypotheses (Grasshopper; the AES one lives in aes256.hpp) ----

enum class KuzLastRoundModel { hd, hw };

/// Last-round guess of k10[byte_index] directly from the ciphertext.
/// hd: HD(c[b], c[b] ^ g) — identically HW(g), constant over traces, which
/// is exactly why this classic attack shape cannot work here.
/// hw: HW(c[b] ^ g).
int kuz_last_round_hypothesis(const Block& c, int byte_index, int guess,
                              KuzLastRoundModel model);

/// Ninth-round attack assuming k10 is known: Y = c ^ k10 is the round-9
/// register; W = L^{-1}(Y) its pre-L state; the guessed round-8 output byte
/// is S^{-1}(W[b]) ^ g. Returns HD(that byte, Y[b]) — the byte's
/// contribution to the round-8 -> round-9 register distance when g = k9[b].
int kuz_round9_hypothesis(const Block& c, const Block& k10, int byte_index,
                          int guess);

// ---- attack orchestration ----

enum class AttackId {
    aes_last_round,
    kuz_last_round_hd,
    kuz_last_round_hw,
    kuz_round9,
};

const char* attack_name(AttackId id);
std::optional<AttackId> attack_from_name(std::string_view name);

/// Attack id does not apply to the trace set's cipher.
class IncompatibleAttackError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AttackOptions {
    /// Master key; when present, per-byte ranks of the attack's true subkey
    /// bytes are computed (k14 for AES, k10 or k9 for Grasshopper).
    std::optional<Key256> true_key;
    /// Required by kuz_round9.
    std::optional<Block> k10;
    /// Absolute sample window [lo, hi); default = the targeted round's event.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> window;
};

struct ByteAttackResult {
    int best_guess = -1;        // -1 when every guess is degenerate
    double peak_abs_r = 0.0;
    std::uint32_t peak_sample = 0;
    int true_rank = -1;         // -1 when no true key / degenerate
    bool degenerate = false;    // all 256 guesses degenerate over the window
};

struct AttackReport {
    AttackId attack = AttackId::aes_last_round;
    CipherId cipher = CipherId::kuznyechik;
    std::size_t n_traces = 0;
    std::uint32_t window_lo = 0, window_hi = 0;
    bool has_true_ranks = false;
    bool structurally_infeasible = false; // every byte degenerate
    std::array<ByteAttackResult, 16> bytes;
};

/// Byte index convention in the report: AES = wire position (matches k14's
/// byte order), Grasshopper = Block position x_b.
AttackReport run_attack(const TraceSet& ts, AttackId id,
                        const AttackOptions& opt = {});

/// Per-byte mean rank across repeated reports. Throws std::invalid_argument
/// if no reports or any report lacks true-key ranks.
std::array<double, 16> guessing_entropy(std::span<const AttackReport> reports);

std::string report_to_text(const AttackReport& rep);
std::string report_to_csv(const AttackReport& rep);

/// The correlation matrix for one report byte, recomputed with the same
/// window (for CSV dumps of a finished attack).
CorrelationMatrix attack_correlation_matrix(const TraceSet& ts, AttackId id,
                                            int byte_index,
                                            const AttackOptions& opt = {});

} // namespace scaw
