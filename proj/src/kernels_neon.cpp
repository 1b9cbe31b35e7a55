#include "qsid/kernels.hpp"

#include <arm_neon.h>

namespace qsid::kernels {

namespace {

inline bool any_top_bit(int64x2_t m)
{
    uint64x2_t s = vshrq_n_u64(vreinterpretq_u64_s64(m), 63);
    return (vgetq_lane_u64(s, 0) | vgetq_lane_u64(s, 1)) != 0;
}

inline bool add_overflows(int64x2_t a, int64x2_t b, int64x2_t r)
{
    return any_top_bit(vandq_s64(veorq_s64(a, r), veorq_s64(b, r)));
}

inline bool sub_overflows(int64x2_t a, int64x2_t b, int64x2_t r)
{
    return any_top_bit(vandq_s64(veorq_s64(a, b), veorq_s64(a, r)));
}

// vaddq/vsubq wrap; the flags above catch it before the store.
inline int64x2_t wrap_add(int64x2_t a, int64x2_t b)
{
    return vreinterpretq_s64_u64(vaddq_u64(vreinterpretq_u64_s64(a), vreinterpretq_u64_s64(b)));
}

inline int64x2_t wrap_sub(int64x2_t a, int64x2_t b)
{
    return vreinterpretq_s64_u64(vsubq_u64(vreinterpretq_u64_s64(a), vreinterpretq_u64_s64(b)));
}

std::size_t add_signed(std::int64_t* dst, const std::int64_t* src, std::size_t n, int sign)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        int64x2_t a = vld1q_s64(dst + i);
        int64x2_t b = vld1q_s64(src + i);
        int64x2_t r = sign > 0 ? wrap_add(a, b) : wrap_sub(a, b);
        bool ovf = sign > 0 ? add_overflows(a, b, r) : sub_overflows(a, b, r);
        if (ovf) return i + detail::add_signed_scalar(dst + i, src + i, 2, sign);
        vst1q_s64(dst + i, r);
    }
    return i + detail::add_signed_scalar(dst + i, src + i, n - i, sign);
}

std::size_t mul_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    if (n <= e) return n;
    std::size_t top = n;
    while (top >= e + 2) {
        std::int64_t* p = c + top - 2;
        int64x2_t a = vld1q_s64(p);
        int64x2_t b = vld1q_s64(p - e);
        int64x2_t r = sign > 0 ? wrap_sub(a, b) : wrap_add(a, b);
        bool ovf = sign > 0 ? sub_overflows(a, b, r) : add_overflows(a, b, r);
        if (ovf) {
            std::size_t k = detail::mul_binomial_scalar_from(c, top, top - 2, e, sign);
            return k == top - 2 ? detail::mul_binomial_scalar_from(c, k, e, e, sign) : k;
        }
        vst1q_s64(p, r);
        top -= 2;
    }
    return detail::mul_binomial_scalar_from(c, top, e, e, sign);
}

std::size_t div_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    if (e < 2) return detail::div_binomial_scalar_from(c, 0, n, e, sign);
    std::size_t i = e;
    for (; i + 2 <= n; i += 2) {
        int64x2_t a = vld1q_s64(c + i);
        int64x2_t b = vld1q_s64(c + i - e);
        int64x2_t r = sign > 0 ? wrap_add(a, b) : wrap_sub(a, b);
        bool ovf = sign > 0 ? add_overflows(a, b, r) : sub_overflows(a, b, r);
        if (ovf) {
            std::size_t k = detail::div_binomial_scalar_from(c, i, i + 2, e, sign);
            return k == i + 2 ? detail::div_binomial_scalar_from(c, k, n, e, sign) : k;
        }
        vst1q_s64(c + i, r);
    }
    return detail::div_binomial_scalar_from(c, i, n, e, sign);
}

const Table table{&add_signed, &mul_binomial, &div_binomial};

} // namespace

const Table* detail::neon_table() { return &table; }

} // namespace qsid::kernels
