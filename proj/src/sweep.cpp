#include "propalg/sweep.hpp"

#include <cstdlib>

namespace propalg {

namespace {
std::atomic<unsigned> g_override{0};
}

void set_sweep_threads(unsigned n) { g_override.store(n); }

unsigned sweep_threads() {
    if (unsigned n = g_override.load()) return n;
    if (const char* env = std::getenv("PROPALG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

} // namespace propalg
