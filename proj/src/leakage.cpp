#include "scaw/leakage.hpp"

#include <stdexcept>

#include "scaw/aes256.hpp"
#include "scaw/masking.hpp"

namespace scaw {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::vector<std::string> event_labels(CipherId cipher) {
    std::vector<std::string> labels;
    switch (cipher) {
        case CipherId::kuznyechik:
        case CipherId::kuznyechik_masked:
            for (int j = 1; j <= 32; ++j)
                labels.push_back("keyexp_" + std::to_string(j));
            labels.push_back("load");
            for (int r = 1; r <= 9; ++r)
                labels.push_back("round_" + std::to_string(r));
            labels.push_back("final_xor");
            if (cipher == CipherId::kuznyechik_masked) labels.push_back("unmask");
            break;
        case CipherId::aes256:
            labels.push_back("load");
            for (int r = 0; r <= 14; ++r)
                labels.push_back("round_" + std::to_string(r));
            break;
    }
    return labels;
}

struct RegPair {
    Block prev, curr;
};

} // namespace

const char* cipher_name(CipherId id) {
    switch (id) {
        case CipherId::kuznyechik: return "kuznyechik";
        case CipherId::kuznyechik_masked: return "kuznyechik-masked";
        case CipherId::aes256: return "aes256";
    }
    return "?";
}

const char* model_name(LeakModel m) {
    switch (m) {
        case LeakModel::hamming_weight: return "hw";
        case LeakModel::hamming_distance: return "hd";
        case LeakModel::single_bit: return "bit";
    }
    return "?";
}

void LeakageConfig::validate() const {
    if (sigma < 0.0) throw std::invalid_argument("noise sigma must be >= 0");
    if (samples_per_event < 1)
        throw std::invalid_argument("samples_per_event must be >= 1");
    if (bit_index > 127)
        throw std::invalid_argument("bit_index must be in 0..127");
}

double leak_value(const Block& prev, const Block& curr, const LeakageConfig& cfg,
                  GaussianSource& noise) {
    double v = 0.0;
    switch (cfg.model) {
        case LeakModel::hamming_weight:
            v = hamming_weight(curr);
            break;
        case LeakModel::hamming_distance:
            v = hamming_distance(prev, curr);
            break;
        case LeakModel::single_bit:
            v = (curr.b[cfg.bit_index >> 3] >> (cfg.bit_index & 7)) & 1;
            break;
    }
    double x = cfg.alpha * v + cfg.beta;
    if (cfg.sigma > 0.0) x += cfg.sigma * noise.next();
    return x;
}

std::uint32_t TraceSet::event_offset(std::string_view label) const {
    for (const auto& e : event_map)
        if (e.label == label) return e.offset;
    throw std::invalid_argument("no such event: " + std::string(label));
}

TraceSet simulate_traces(const SimOptions& opt, std::size_t n,
                         const LeakageConfig& cfg) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("trace count must be >= 1");

    TraceSet ts;
    ts.cipher = opt.cipher;
    ts.config = cfg;
    ts.key_fingerprint = fnv1a64(opt.key.k);

    std::vector<std::string> labels = event_labels(opt.cipher);
    const std::uint32_t spe = cfg.samples_per_event;
    for (std::size_t e = 0; e < labels.size(); ++e)
        ts.event_map.push_back({labels[e], static_cast<std::uint32_t>(e * spe)});
    ts.samples_per_trace = static_cast<std::uint32_t>(labels.size() * spe);

    const bool is_kuz = opt.cipher != CipherId::aes256;
    const bool is_masked = opt.cipher == CipherId::kuznyechik_masked;

    RoundKeySet rk;
    std::vector<KeyScheduleStep> steps;
    if (is_kuz) rk = key_schedule(opt.key, &steps);

    MaskSchedule fixed_ms;
    if (is_masked && !opt.remask_per_block) {
        MaskGenerator gen(opt.mask_seed);
        fixed_ms = build_mask_schedule(fresh_mask(gen));
    }

    ts.traces.reserve(n);
    std::vector<RegPair> pairs;
    pairs.reserve(labels.size());
    const Block zero{};

    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t stream = cfg.seed + static_cast<std::uint64_t>(i) * kGolden;
        std::uint64_t pt_seed = splitmix64(stream);
        std::uint64_t noise_seed = splitmix64(stream);

        XorShift64Star pt_rng(pt_seed);
        Block p;
        for (int b = 0; b < 16; ++b) p.b[b] = pt_rng.next_byte();

        pairs.clear();
        Block ct;
        if (is_kuz) {
            // Feistel a1 register: k1, then the 32 step outputs.
            Block a1 = rk.k[0];
            for (const auto& s : steps) {
                pairs.push_back({a1, s.new_a1});
                a1 = s.new_a1;
            }
            if (is_masked) {
                const MaskSchedule* ms = &fixed_ms;
                MaskSchedule per_block;
                if (opt.remask_per_block) {
                    std::uint64_t mstream =
                        opt.mask_seed + static_cast<std::uint64_t>(i) * kGolden;
                    MaskGenerator gen(splitmix64(mstream));
                    per_block = build_mask_schedule(fresh_mask(gen));
                    ms = &per_block;
                }
                MaskedRoundTrace tr = masked_encrypt_with_trace(p, rk, *ms);
                Block reg = tr.initial_masked;
                pairs.push_back({zero, reg});
                for (int r = 0; r < 9; ++r) {
                    pairs.push_back({reg, tr.after_l[r]});
                    reg = tr.after_l[r];
                }
                pairs.push_back({reg, tr.after_final_x_masked});
                pairs.push_back({tr.after_final_x_masked, tr.output});
                ct = tr.output;
            } else {
                RoundTrace tr = encrypt_with_trace(p, rk);
                pairs.push_back({zero, p});
                Block reg = p;
                for (int r = 0; r < 9; ++r) {
                    pairs.push_back({reg, tr.after_l[r]});
                    reg = tr.after_l[r];
                }
                pairs.push_back({reg, tr.after_final_x});
                ct = tr.output;
            }
        } else {
            AesRoundTrace tr = aes256_encrypt_with_trace(p, opt.key);
            pairs.push_back({zero, p});
            pairs.push_back({p, tr.after_ark0});
            Block reg = tr.after_ark0;
            for (int r = 0; r < 14; ++r) {
                pairs.push_back({reg, tr.after_ark[r]});
                reg = tr.after_ark[r];
            }
            ct = tr.output;
        }

        GaussianSource noise(noise_seed);
        Trace t;
        t.pt = p;
        t.ct = ct;
        t.samples.reserve(ts.samples_per_trace);
        for (const auto& pr : pairs)
            for (std::uint32_t s = 0; s < spe; ++s)
                t.samples.push_back(
                    static_cast<float>(leak_value(pr.prev, pr.curr, cfg, noise)));
        ts.traces.push_back(std::move(t));
    }
    return ts;
}

} // namespace scaw
