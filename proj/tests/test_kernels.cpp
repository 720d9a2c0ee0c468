#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "pursuitlab/kernels.hpp"
#include "pursuitlab/rng.hpp"

using pursuitlab::Rng;
namespace kern = pursuitlab::kern;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    return v;
}

double naive_dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

void check_ops(const kern::Ops& ops) {
    Rng rng(20240517);
    // Sizes straddling every vector-width boundary, including the tails.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u,
                          31u, 32u, 33u, 63u, 64u, 100u}) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);

        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::fabs(x[i] * y[i]);
        double tol = 1e-13 * (1.0 + mag);

        CHECK(std::fabs(ops.dot(x.data(), y.data(), n) - naive_dot(x, y)) <= tol);
        CHECK(std::fabs(ops.nrm2sq(x.data(), n) - naive_dot(x, x)) <= tol);

        auto z = y;
        ops.axpy(0.7, x.data(), z.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(z[i] - (y[i] + 0.7 * x[i])) <= 1e-14 * (1.0 + std::fabs(y[i])));

        auto w = x;
        ops.scal(-1.5, w.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(w[i] == -1.5 * x[i]);
    }
}

}

TEST_CASE("scalar kernels match naive arithmetic") {
    check_ops(kern::scalar_ops());
    CHECK(std::string(kern::scalar_ops().name) == "scalar");
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels agree with scalar") {
    if (!kern::avx2_supported()) return;
    check_ops(kern::avx2_ops());
    CHECK(std::string(kern::avx2_ops().name) == "avx2");

    const kern::Ops& simd = kern::avx2_ops();
    const kern::Ops& ref = kern::scalar_ops();
    Rng rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 1 + rng.index(80);
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::fabs(x[i] * y[i]);
        CHECK(std::fabs(simd.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <=
              1e-13 * (1.0 + mag));
        CHECK(std::fabs(simd.nrm2sq(x.data(), n) - ref.nrm2sq(x.data(), n)) <=
              1e-13 * (1.0 + mag));
        auto za = y, zb = y;
        simd.axpy(1.25, x.data(), za.data(), n);
        ref.axpy(1.25, x.data(), zb.data(), n);
        // fused multiply-add rounds once where the scalar path rounds twice
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(za[i] - zb[i]) <= 1e-14 * (1.0 + std::fabs(zb[i])));
    }
}
#endif

#if defined(__aarch64__)
TEST_CASE("neon kernels agree with scalar") {
    check_ops(kern::neon_ops());
    const kern::Ops& simd = kern::neon_ops();
    const kern::Ops& ref = kern::scalar_ops();
    Rng rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 1 + rng.index(80);
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::fabs(x[i] * y[i]);
        CHECK(std::fabs(simd.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <=
              1e-13 * (1.0 + mag));
    }
}
#endif

TEST_CASE("active backend is one of the compiled variants") {
    std::string name = kern::active().name;
    bool known = name == "scalar" || name == "avx2" || name == "neon";
    CHECK(known);
    const char* forced = std::getenv("PURSUIT_LAB_KERNELS");
    if (forced && std::string(forced) == "scalar") CHECK(name == "scalar");
}
