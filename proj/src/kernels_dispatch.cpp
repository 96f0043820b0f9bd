#include "kronsum/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kronsum/errors.hpp"

namespace kronsum::kernels {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    const char* env = std::getenv("KRONSUM_BACKEND");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{initial_backend()};
    return slot;
}

} // namespace

bool avx2_available() {
    static const bool ok = (avx2_table() != nullptr) && cpu_has_avx2_fma();
    return ok;
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
    if (backend == Backend::avx2 && !avx2_available()) {
        throw precondition_error("avx2 kernel backend unavailable on this CPU/build");
    }
    backend_slot().store(backend, std::memory_order_relaxed);
}

const KernelTable& active() {
    return active_backend() == Backend::avx2 ? *avx2_table() : scalar_table();
}

std::string backend_name(Backend backend) {
    return backend == Backend::avx2 ? "avx2" : "scalar";
}

} // namespace kronsum::kernels
