#include "pursuitlab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace pursuitlab::kern {
namespace {

const Ops& resolve() {
    const char* req = std::getenv("PURSUIT_LAB_KERNELS");
    if (req != nullptr && std::strcmp(req, "scalar") == 0) return scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    bool want_avx2 = req == nullptr || std::strcmp(req, "auto") == 0 ||
                     std::strcmp(req, "avx2") == 0;
    if (want_avx2 && avx2_supported()) return avx2_ops();
#endif
#if defined(__aarch64__)
    bool want_neon = req == nullptr || std::strcmp(req, "auto") == 0 ||
                     std::strcmp(req, "neon") == 0;
    if (want_neon) return neon_ops();
#endif
    return scalar_ops();
}

}

const Ops& active() {
    static const Ops& ops = resolve();
    return ops;
}

}
