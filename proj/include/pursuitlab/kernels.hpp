#pragma once

#include <cstddef>

// Vector primitives underneath everything else (QR, Gram formation, greedy
// scoring, subset enumeration). A scalar reference implementation always
// exists; on x86-64 an AVX2+FMA variant and on aarch64 a NEON variant are
// compiled in, and the best supported one is picked once at runtime.
//
// Set PURSUIT_LAB_KERNELS=scalar|avx2|neon|auto to override the choice
// (requests for an unsupported backend fall back to scalar). The backends
// agree to last-ulp-level rounding, not bit-for-bit; every consumer tolerance
// in this library is orders of magnitude wider than that.
namespace pursuitlab::kern {

struct Ops {
    double (*dot)(const double* x, const double* y, std::size_t n);
    double (*nrm2sq)(const double* x, std::size_t n);
    void (*axpy)(double a, const double* x, double* y, std::size_t n);  // y += a*x
    void (*scal)(double a, double* x, std::size_t n);                   // x *= a
    const char* name;
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();       // only call if avx2_supported()
bool avx2_supported();
#endif

#if defined(__aarch64__)
const Ops& neon_ops();
#endif

// The backend in use for this process (resolved once, thread-safe).
const Ops& active();

inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}
inline double nrm2sq(const double* x, std::size_t n) {
    return active().nrm2sq(x, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy(a, x, y, n);
}
inline void scal(double a, double* x, std::size_t n) {
    active().scal(a, x, n);
}

}
