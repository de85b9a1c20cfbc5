#include "scaw/cpa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numeric>

#include "scaw/aes256.hpp"
#include "scaw/gf_linear.hpp"
#include "scaw/kernels.hpp"

namespace scaw {

CorrelationMatrix pearson_matrix(const HypothesisMatrix& h, const TraceSet& ts,
                                 std::uint32_t sample_lo,
                                 std::uint32_t sample_hi) {
    const std::size_t n = ts.traces.size();
    if (h.n_traces != n || h.v.size() != n * 256)
        throw std::invalid_argument("hypothesis/trace count mismatch");
    if (n < 2) throw std::invalid_argument("need at least 2 traces");
    if (sample_hi == 0) sample_hi = ts.samples_per_trace;
    if (sample_lo >= sample_hi || sample_hi > ts.samples_per_trace)
        throw std::invalid_argument("bad sample window");
    const std::size_t w = sample_hi - sample_lo;

    // Single pass: exact integer moments for the hypotheses, double moments
    // and exact min/max (degeneracy witness) for the samples.
    std::array<std::int64_t, 256> sum_h{}, sum_h2{};
    std::vector<double> sum_t(w, 0.0), sum_t2(w, 0.0);
    std::vector<float> mn(w, std::numeric_limits<float>::infinity());
    std::vector<float> mx(w, -std::numeric_limits<float>::infinity());
    std::vector<double> sum_ht(256 * w, 0.0);

    for (std::size_t d = 0; d < n; ++d) {
        const float* row = ts.traces[d].samples.data() + sample_lo;
        kern::moments(sum_t.data(), sum_t2.data(), row, w);
        kern::minmax(mn.data(), mx.data(), row, w);
        const std::int8_t* hr = &h.v[d * 256];
        for (int g = 0; g < 256; ++g) {
            const std::int64_t hv = hr[g];
            sum_h[g] += hv;
            sum_h2[g] += hv * hv;
            if (hv != 0)
                kern::axpy(&sum_ht[static_cast<std::size_t>(g) * w],
                           static_cast<double>(hv), row, w);
        }
    }

    CorrelationMatrix cm;
    cm.sample_base = sample_lo;
    cm.n_samples = w;
    cm.r.assign(256 * w, 0.0);
    cm.sample_degenerate.assign(w, 0);
    for (std::size_t j = 0; j < w; ++j)
        cm.sample_degenerate[j] = (mn[j] == mx[j]) ? 1 : 0;

    const double dn = static_cast<double>(n);
    for (int g = 0; g < 256; ++g) {
        const std::int64_t var_h_num =
            static_cast<std::int64_t>(n) * sum_h2[g] - sum_h[g] * sum_h[g];
        cm.guess_degenerate[g] = (var_h_num == 0);
        if (cm.guess_degenerate[g]) continue;
        for (std::size_t j = 0; j < w; ++j) {
            if (cm.sample_degenerate[j]) continue;
            const double var_t_num = dn * sum_t2[j] - sum_t[j] * sum_t[j];
            const double den =
                std::sqrt(static_cast<double>(var_h_num) * std::max(var_t_num, 0.0));
            double r = 0.0;
            if (den > 0.0) {
                const double num = dn * sum_ht[static_cast<std::size_t>(g) * w + j] -
                                   static_cast<double>(sum_h[g]) * sum_t[j];
                r = std::clamp(num / den, -1.0, 1.0);
            }
            cm.r[static_cast<std::size_t>(g) * w + j] = r;
        }
    }
    return cm;
}

int kuz_last_round_hypothesis(const Block& c, int byte_index, int guess,
                              KuzLastRoundModel model) {
    const std::uint8_t cb = c.b[byte_index];
    if (model == KuzLastRoundModel::hd)
        return hamming_distance(cb, static_cast<std::uint8_t>(cb ^ guess));
    return hamming_weight(static_cast<std::uint8_t>(cb ^ guess));
}

int kuz_round9_hypothesis(const Block& c, const Block& k10, int byte_index,
                          int guess) {
    const Block y = c ^ k10;
    const Block w = big_l_inv(y);
    const std::uint8_t z = static_cast<std::uint8_t>(sbox_inv(w.b[byte_index]) ^ guess);
    return hamming_distance(z, y.b[byte_index]);
}

const char* attack_name(AttackId id) {
    switch (id) {
        case AttackId::aes_last_round: return "aes-last-round";
        case AttackId::kuz_last_round_hd: return "kuz-last-round-hd";
        case AttackId::kuz_last_round_hw: return "kuz-last-round-hw";
        case AttackId::kuz_round9: return "kuz-round9";
    }
    return "?";
}

std::optional<AttackId> attack_from_name(std::string_view name) {
    for (AttackId id : {AttackId::aes_last_round, AttackId::kuz_last_round_hd,
                        AttackId::kuz_last_round_hw, AttackId::kuz_round9})
        if (name == attack_name(id)) return id;
    return std::nullopt;
}

namespace {

bool attack_fits_cipher(AttackId id, CipherId cipher) {
    if (id == AttackId::aes_last_round) return cipher == CipherId::aes256;
    return cipher == CipherId::kuznyechik || cipher == CipherId::kuznyechik_masked;
}

std::pair<std::uint32_t, std::uint32_t> default_window(const TraceSet& ts,
                                                       AttackId id) {
    const char* label = nullptr;
    switch (id) {
        case AttackId::aes_last_round: label = "round_14"; break;
        case AttackId::kuz_last_round_hd:
        case AttackId::kuz_last_round_hw: label = "final_xor"; break;
        case AttackId::kuz_round9: label = "round_9"; break;
    }
    const std::uint32_t lo = ts.event_offset(label);
    return {lo, lo + ts.config.samples_per_event};
}

void validate_attack(const TraceSet& ts, AttackId id, const AttackOptions& opt) {
    if (!attack_fits_cipher(id, ts.cipher))
        throw IncompatibleAttackError(std::string(attack_name(id)) +
                                      " does not apply to " +
                                      cipher_name(ts.cipher) + " traces");
    if (id == AttackId::kuz_round9 && !opt.k10)
        throw std::invalid_argument("kuz-round9 requires the k10 subkey");
}

std::pair<std::uint32_t, std::uint32_t> resolve_window(const TraceSet& ts,
                                                       AttackId id,
                                                       const AttackOptions& opt) {
    auto win = opt.window ? *opt.window : default_window(ts, id);
    if (win.first >= win.second || win.second > ts.samples_per_trace)
        throw std::invalid_argument("bad sample window");
    return win;
}

HypothesisMatrix build_hypothesis_matrix(const TraceSet& ts, AttackId id,
                                         int byte_index, const Block* k10) {
    static const auto popcount_tbl = [] {
        std::array<std::int8_t, 256> t{};
        for (int v = 0; v < 256; ++v)
            t[v] = static_cast<std::int8_t>(__builtin_popcount(v));
        return t;
    }();

    const std::size_t n = ts.traces.size();
    HypothesisMatrix h;
    h.n_traces = n;
    h.v.resize(n * 256);
    for (std::size_t d = 0; d < n; ++d) {
        const Block& ct = ts.traces[d].ct;
        std::int8_t* row = &h.v[d * 256];
        switch (id) {
            case AttackId::aes_last_round: {
                // wire position j lives at Block index 15 - j
                const std::uint8_t cj = ct.b[15 - byte_index];
                const std::uint8_t cs = ct.b[15 - aes_shiftrows_src(byte_index)];
                for (int g = 0; g < 256; ++g)
                    row[g] = popcount_tbl[cs ^ aes_sbox_inv(
                                                   static_cast<std::uint8_t>(cj ^ g))];
                break;
            }
            case AttackId::kuz_last_round_hd:
                for (int g = 0; g < 256; ++g) row[g] = popcount_tbl[g];
                break;
            case AttackId::kuz_last_round_hw: {
                const std::uint8_t cb = ct.b[byte_index];
                for (int g = 0; g < 256; ++g) row[g] = popcount_tbl[cb ^ g];
                break;
            }
            case AttackId::kuz_round9: {
                const Block y = ct ^ *k10;
                const Block w = big_l_inv(y);
                const std::uint8_t e = static_cast<std::uint8_t>(
                    sbox_inv(w.b[byte_index]) ^ y.b[byte_index]);
                for (int g = 0; g < 256; ++g) row[g] = popcount_tbl[e ^ g];
                break;
            }
        }
    }
    return h;
}

/// True subkey bytes the attack targets, given the master key. Indexing: AES
/// wire order, Grasshopper Block order.
std::array<std::uint8_t, 16> true_subkey_bytes(AttackId id, const Key256& key) {
    std::array<std::uint8_t, 16> out{};
    switch (id) {
        case AttackId::aes_last_round:
            return aes256_key_schedule(key).rk[14];
        case AttackId::kuz_last_round_hd:
        case AttackId::kuz_last_round_hw:
            return key_schedule(key).k[9].b;
        case AttackId::kuz_round9:
            return key_schedule(key).k[8].b;
    }
    return out;
}

} // namespace

AttackReport run_attack(const TraceSet& ts, AttackId id,
                        const AttackOptions& opt) {
    validate_attack(ts, id, opt);
    const auto [lo, hi] = resolve_window(ts, id, opt);

    AttackReport rep;
    rep.attack = id;
    rep.cipher = ts.cipher;
    rep.n_traces = ts.traces.size();
    rep.window_lo = lo;
    rep.window_hi = hi;
    rep.has_true_ranks = opt.true_key.has_value();

    std::array<std::uint8_t, 16> truth{};
    if (opt.true_key) truth = true_subkey_bytes(id, *opt.true_key);

    bool all_degenerate = true;
    for (int b = 0; b < 16; ++b) {
        HypothesisMatrix h =
            build_hypothesis_matrix(ts, id, b, opt.k10 ? &*opt.k10 : nullptr);
        CorrelationMatrix cm = pearson_matrix(h, ts, lo, hi);

        ByteAttackResult& res = rep.bytes[b];
        std::array<double, 256> peak;
        std::array<std::uint32_t, 256> peak_at{};
        std::array<bool, 256> usable{};
        for (int g = 0; g < 256; ++g) {
            peak[g] = -2.0;
            for (std::size_t j = 0; j < cm.n_samples; ++j) {
                if (cm.cell_degenerate(g, j)) continue;
                const double r = cm.at(g, j);
                if (r > peak[g]) {
                    peak[g] = r;
                    peak_at[g] = cm.sample_base + static_cast<std::uint32_t>(j);
                    usable[g] = true;
                }
            }
        }

        // Rank order: descending signed peak r, non-degenerate first, guess
        // value as the deterministic tie-break.  The leakage scale is
        // positive, so the right guess correlates positively; hypotheses that
        // are affine in the guess make |r| blind between a guess and its
        // bitwise complement (h and 8-h mirror each other), and the signed
        // statistic is what separates them.
        std::array<int, 256> order;
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
            if (usable[a] != usable[c]) return usable[a];
            return peak[a] > peak[c];
        });

        if (!usable[order[0]]) {
            res.degenerate = true;
            continue;
        }
        all_degenerate = false;
        res.best_guess = order[0];
        res.peak_abs_r = std::fabs(peak[order[0]]);
        res.peak_sample = peak_at[order[0]];
        if (opt.true_key) {
            for (int pos = 0; pos < 256; ++pos) {
                if (order[pos] == truth[b]) {
                    res.true_rank = pos;
                    break;
                }
            }
        }
    }
    rep.structurally_infeasible = all_degenerate;
    return rep;
}

std::array<double, 16> guessing_entropy(std::span<const AttackReport> reports) {
    if (reports.empty())
        throw std::invalid_argument("guessing_entropy needs at least one report");
    std::array<double, 16> mean{};
    for (const AttackReport& rep : reports) {
        if (!rep.has_true_ranks)
            throw std::invalid_argument("report lacks true-key ranks");
        for (int b = 0; b < 16; ++b) {
            if (rep.bytes[b].true_rank < 0)
                throw std::invalid_argument("report lacks true-key ranks");
            mean[b] += rep.bytes[b].true_rank;
        }
    }
    for (double& v : mean) v /= static_cast<double>(reports.size());
    return mean;
}

namespace {

std::string format_line(const char* fmt, ...) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

} // namespace

std::string report_to_text(const AttackReport& rep) {
    std::string out;
    out += format_line("attack:  %s\n", attack_name(rep.attack));
    out += format_line("cipher:  %s\n", cipher_name(rep.cipher));
    out += format_line("traces:  %zu\n", rep.n_traces);
    out += format_line("window:  samples [%u, %u)\n", rep.window_lo, rep.window_hi);
    out += "byte  best  peak|r|    sample  rank\n";
    for (int b = 0; b < 16; ++b) {
        const ByteAttackResult& r = rep.bytes[b];
        if (r.degenerate) {
            out += format_line("%4d     -        -         -     -  (degenerate)\n", b);
            continue;
        }
        std::string rank = r.true_rank >= 0 ? std::to_string(r.true_rank) : "-";
        out += format_line("%4d  0x%02x  %8.5f  %8u  %4s\n", b, r.best_guess,
                           r.peak_abs_r, r.peak_sample, rank.c_str());
    }
    if (rep.has_true_ranks && !rep.structurally_infeasible) {
        double sum = 0.0;
        int cnt = 0;
        for (const auto& r : rep.bytes)
            if (r.true_rank >= 0) {
                sum += r.true_rank;
                ++cnt;
            }
        if (cnt > 0)
            out += format_line("mean true-byte rank: %.2f\n", sum / cnt);
    }
    out += rep.structurally_infeasible
               ? "status: structurally infeasible (every hypothesis row has zero "
                 "variance; the model cannot distinguish guesses)\n"
               : "status: ok\n";
    return out;
}

std::string report_to_csv(const AttackReport& rep) {
    std::string out = "byte,best_guess,peak_abs_r,peak_sample,rank,degenerate\n";
    for (int b = 0; b < 16; ++b) {
        const ByteAttackResult& r = rep.bytes[b];
        if (r.degenerate) {
            out += format_line("%d,,,,,1\n", b);
            continue;
        }
        std::string rank = r.true_rank >= 0 ? std::to_string(r.true_rank) : "";
        out += format_line("%d,%d,%.17g,%u,%s,0\n", b, r.best_guess, r.peak_abs_r,
                           r.peak_sample, rank.c_str());
    }
    return out;
}

CorrelationMatrix attack_correlation_matrix(const TraceSet& ts, AttackId id,
                                            int byte_index,
                                            const AttackOptions& opt) {
    validate_attack(ts, id, opt);
    if (byte_index < 0 || byte_index > 15)
        throw std::invalid_argument("byte_index must be in 0..15");
    const auto [lo, hi] = resolve_window(ts, id, opt);
    HypothesisMatrix h =
        build_hypothesis_matrix(ts, id, byte_index, opt.k10 ? &*opt.k10 : nullptr);
    return pearson_matrix(h, ts, lo, hi);
}

} // namespace scaw
