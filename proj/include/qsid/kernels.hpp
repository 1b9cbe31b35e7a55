#pragma once

// Int64 coefficient kernels with a scalar reference and vector variants.
//
// Every kernel works in place and stops before an element whose result would
// overflow. The returned position tells the caller where to resume with big
// integers; elements on the unfinished side are left untouched.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qsid::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct Table {
    // dst[i] += sign * src[i] for i in [0, n).
    // Returns k: [0, k) updated, [k, n) untouched.
    std::size_t (*add_signed)(std::int64_t* dst, const std::int64_t* src, std::size_t n, int sign);

    // c <- c * (1 - sign * t^e), e >= 1, walking from the top down.
    // Returns k: [k, n) updated, [e, k) still to do. Finished when k <= e.
    std::size_t (*mul_binomial)(std::int64_t* c, std::size_t n, std::size_t e, int sign);

    // c <- c / (1 - sign * t^e), e >= 1, walking upwards.
    // Returns k: [0, k) final, [k, n) still to do. Finished when k == n.
    std::size_t (*div_binomial)(std::int64_t* c, std::size_t n, std::size_t e, int sign);
};

const Table& scalar_table();

bool isa_supported(Isa isa);

// Best ISA on this machine unless overridden with select().
Isa active_isa();
const Table& active();

// Forces an ISA (tests use this to compare paths). Throws if unsupported.
void select(Isa isa);
void reset_selection();

namespace detail {
const Table* avx2_table();
const Table* neon_table();

std::size_t add_signed_scalar(std::int64_t* dst, const std::int64_t* src, std::size_t n, int sign);
// Walks i = top .. stop+1 (stop >= e); returns the resume point or stop.
std::size_t mul_binomial_scalar_from(std::int64_t* c, std::size_t top, std::size_t stop, std::size_t e, int sign);
std::size_t div_binomial_scalar_from(std::int64_t* c, std::size_t start, std::size_t n, std::size_t e,
                                     int sign);
} // namespace detail

} // namespace qsid::kernels
