#include "qsid/kernels.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

namespace qsid::kernels {

#if !defined(QSID_HAVE_AVX2_KERNELS)
const Table* detail::avx2_table() { return nullptr; }
#endif
#if !defined(QSID_HAVE_NEON_KERNELS)
const Table* detail::neon_table() { return nullptr; }
#endif

namespace {

const Table* table_for(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return &scalar_table();
    case Isa::avx2: return detail::avx2_table();
    case Isa::neon: return detail::neon_table();
    }
    return nullptr;
}

Isa detect()
{
#if defined(QSID_HAVE_AVX2_KERNELS) && (defined(__x86_64__) || defined(__i386__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(QSID_HAVE_NEON_KERNELS)
    return Isa::neon;
#endif
    return Isa::scalar;
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_supported(Isa isa)
{
    if (table_for(isa) == nullptr) return false;
    if (isa == Isa::avx2) return detect() == Isa::avx2;
    return true;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const Table& active() { return *table_for(active_isa()); }

void select(Isa isa)
{
    if (!isa_supported(isa))
        throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

void reset_selection() { current().store(detect(), std::memory_order_relaxed); }

} // namespace qsid::kernels
