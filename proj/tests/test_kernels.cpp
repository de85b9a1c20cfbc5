#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <stdexcept>
#include <vector>

#include "scaw/kernels.hpp"
#include "scaw/rng.hpp"

using namespace scaw;

namespace {

std::vector<float> random_floats(std::size_t n, std::uint64_t seed) {
    XorShift64Star rng(seed);
    std::vector<float> v(n);
    for (auto& x : v)
        x = static_cast<float>(to_unit_double(rng.next()) * 20.0 - 10.0);
    return v;
}

struct IsaGuard {
    ~IsaGuard() { kern::reset_isa(); }
};

} // namespace

TEST_CASE("scalar is always supported and force/reset work") {
    IsaGuard guard;
    CHECK(kern::isa_supported(kern::Isa::scalar));
    kern::force_isa(kern::Isa::scalar);
    CHECK(kern::active_isa() == kern::Isa::scalar);
    kern::reset_isa();
    CHECK(kern::isa_supported(kern::active_isa()));
    CHECK(std::string(kern::isa_name(kern::Isa::scalar)) == "scalar");
}

TEST_CASE("forcing an unsupported isa throws and changes nothing") {
    IsaGuard guard;
    kern::Isa missing;
    bool found = false;
    for (kern::Isa isa : {kern::Isa::sse2, kern::Isa::avx2, kern::Isa::neon}) {
        if (!kern::isa_supported(isa)) {
            missing = isa;
            found = true;
            break;
        }
    }
    if (!found) return; // machine supports everything; nothing to check
    const kern::Isa before = kern::active_isa();
    CHECK_THROWS_AS(kern::force_isa(missing), std::invalid_argument);
    CHECK(kern::active_isa() == before);
}

TEST_CASE("xor16_rows equals the scalar result on every supported isa") {
    IsaGuard guard;
    XorShift64Star rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        std::uint8_t data[16][16];
        const std::uint8_t* rows[16];
        for (int i = 0; i < 16; ++i) {
            rows[i] = data[i];
            for (int j = 0; j < 16; ++j) data[i][j] = rng.next_byte();
        }
        std::uint8_t want[16];
        kern::force_isa(kern::Isa::scalar);
        kern::xor16_rows(rows, want);
        for (kern::Isa isa : kern::supported_isas()) {
            kern::force_isa(isa);
            std::uint8_t got[16];
            kern::xor16_rows(rows, got);
            REQUIRE(std::memcmp(got, want, 16) == 0);
        }
    }
}

TEST_CASE("axpy is bit-identical across isas, including odd lengths") {
    IsaGuard guard;
    for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{16},
                          std::size_t{43}, std::size_t{1024}, std::size_t{1021}}) {
        const std::vector<float> x = random_floats(n, 500 + n);
        const std::vector<double> acc0 = [&] {
            std::vector<double> a(n);
            XorShift64Star rng(n);
            for (auto& v : a) v = to_unit_double(rng.next());
            return a;
        }();
        std::vector<double> want = acc0;
        kern::force_isa(kern::Isa::scalar);
        kern::axpy(want.data(), 3.25, x.data(), n);
        kern::axpy(want.data(), -1.5, x.data(), n);
        for (kern::Isa isa : kern::supported_isas()) {
            kern::force_isa(isa);
            std::vector<double> got = acc0;
            kern::axpy(got.data(), 3.25, x.data(), n);
            kern::axpy(got.data(), -1.5, x.data(), n);
            REQUIRE(std::memcmp(got.data(), want.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("moments are bit-identical across isas") {
    IsaGuard guard;
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{64},
                          std::size_t{77}, std::size_t{2048}}) {
        const std::vector<float> x = random_floats(n, 900 + n);
        std::vector<double> sum_want(n, 0.125), sq_want(n, 0.25);
        kern::force_isa(kern::Isa::scalar);
        kern::moments(sum_want.data(), sq_want.data(), x.data(), n);
        for (kern::Isa isa : kern::supported_isas()) {
            kern::force_isa(isa);
            std::vector<double> sum(n, 0.125), sq(n, 0.25);
            kern::moments(sum.data(), sq.data(), x.data(), n);
            REQUIRE(std::memcmp(sum.data(), sum_want.data(), n * sizeof(double)) == 0);
            REQUIRE(std::memcmp(sq.data(), sq_want.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("minmax is bit-identical across isas") {
    IsaGuard guard;
    for (std::size_t n : {std::size_t{1}, std::size_t{9}, std::size_t{32},
                          std::size_t{333}}) {
        const std::vector<float> x = random_floats(n, 313 + n);
        const std::vector<float> y = random_floats(n, 707 + n);
        std::vector<float> mn_want(n, 1e30f), mx_want(n, -1e30f);
        kern::force_isa(kern::Isa::scalar);
        kern::minmax(mn_want.data(), mx_want.data(), x.data(), n);
        kern::minmax(mn_want.data(), mx_want.data(), y.data(), n);
        for (kern::Isa isa : kern::supported_isas()) {
            kern::force_isa(isa);
            std::vector<float> mn(n, 1e30f), mx(n, -1e30f);
            kern::minmax(mn.data(), mx.data(), x.data(), n);
            kern::minmax(mn.data(), mx.data(), y.data(), n);
            REQUIRE(std::memcmp(mn.data(), mn_want.data(), n * sizeof(float)) == 0);
            REQUIRE(std::memcmp(mx.data(), mx_want.data(), n * sizeof(float)) == 0);
        }
    }
}

TEST_CASE("supported isa set contains the active one") {
    bool active_listed = false;
    for (kern::Isa isa : kern::supported_isas()) {
        CHECK(kern::isa_supported(isa));
        active_listed = active_listed || (isa == kern::active_isa());
    }
    CHECK(active_listed);
}
