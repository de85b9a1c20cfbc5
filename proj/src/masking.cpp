#include "scaw/masking.hpp"

#include "scaw/gf_linear.hpp"

namespace scaw {

MaskSchedule build_mask_schedule(const Block& m) {
    MaskSchedule ms;
    ms.base_mask = m;
    ms.round_masks[0] = m;
    for (int i = 1; i < 9; ++i) ms.round_masks[i] = big_l(ms.round_masks[i - 1]);
    ms.final_mask = big_l(ms.round_masks[8]);

    int pool_index[256];
    for (int& v : pool_index) v = -1;
    for (int round = 0; round < 9; ++round) {
        for (int pos = 0; pos < 16; ++pos) {
            std::uint8_t mb = ms.round_masks[round].b[pos];
            if (pool_index[mb] < 0) {
                pool_index[mb] = static_cast<int>(ms.tables.size());
                auto& t = ms.tables.emplace_back();
                for (int v = 0; v < 256; ++v)
                    t[v] = static_cast<std::uint8_t>(kSbox[v ^ mb] ^ mb);
            }
            ms.table_index[round][pos] =
                static_cast<std::uint16_t>(pool_index[mb]);
        }
    }
    return ms;
}

namespace {

Block masked_s_layer(const Block& x, const MaskSchedule& ms, int round) {
    Block y;
    for (int pos = 0; pos < 16; ++pos) y.b[pos] = ms.table(round, pos)[x.b[pos]];
    return y;
}

} // namespace

Block masked_encrypt(const Block& p, const RoundKeySet& rk,
                     const MaskSchedule& ms) {
    Block s = p ^ ms.base_mask;
    for (int r = 0; r < 9; ++r) s = big_l(masked_s_layer(s ^ rk.k[r], ms, r));
    return s ^ rk.k[9] ^ ms.final_mask;
}

MaskedRoundTrace masked_encrypt_with_trace(const Block& p, const RoundKeySet& rk,
                                           const MaskSchedule& ms) {
    MaskedRoundTrace tr;
    Block s = p ^ ms.base_mask;
    tr.initial_masked = s;
    for (int r = 0; r < 9; ++r) {
        s ^= rk.k[r];
        tr.after_x[r] = s;
        s = masked_s_layer(s, ms, r);
        tr.after_s[r] = s;
        s = big_l(s);
        tr.after_l[r] = s;
    }
    s ^= rk.k[9];
    tr.after_final_x_masked = s;
    tr.output = s ^ ms.final_mask;
    return tr;
}

} // namespace scaw
