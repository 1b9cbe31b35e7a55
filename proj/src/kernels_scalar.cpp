#include "qsid/kernels.hpp"

namespace qsid::kernels {

namespace detail {

std::size_t add_signed_scalar(std::int64_t* dst, const std::int64_t* src, std::size_t n, int sign)
{
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t r;
        bool ovf = sign > 0 ? __builtin_add_overflow(dst[i], src[i], &r)
                            : __builtin_sub_overflow(dst[i], src[i], &r);
        if (ovf) return i;
        dst[i] = r;
    }
    return n;
}

// Processes indices top-1 down to e.
std::size_t mul_binomial_scalar_from(std::int64_t* c, std::size_t top, std::size_t stop, std::size_t e, int sign)
{
    for (std::size_t i = top; i > stop; --i) {
        std::size_t j = i - 1;
        std::int64_t r;
        bool ovf = sign > 0 ? __builtin_sub_overflow(c[j], c[j - e], &r)
                            : __builtin_add_overflow(c[j], c[j - e], &r);
        if (ovf) return i;
        c[j] = r;
    }
    return stop < top ? stop : top;
}

std::size_t div_binomial_scalar_from(std::int64_t* c, std::size_t start, std::size_t n, std::size_t e,
                                     int sign)
{
    std::size_t i = start < e ? e : start;
    for (; i < n; ++i) {
        std::int64_t r;
        bool ovf = sign > 0 ? __builtin_add_overflow(c[i], c[i - e], &r)
                            : __builtin_sub_overflow(c[i], c[i - e], &r);
        if (ovf) return i;
        c[i] = r;
    }
    return n;
}

} // namespace detail

namespace {

std::size_t mul_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    if (n <= e) return n;
    return detail::mul_binomial_scalar_from(c, n, e, e, sign);
}

std::size_t div_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    return detail::div_binomial_scalar_from(c, 0, n, e, sign);
}

const Table table{&detail::add_signed_scalar, &mul_binomial, &div_binomial};

} // namespace

const Table& scalar_table() { return table; }

} // namespace qsid::kernels
