#include "qsid/kernels.hpp"

#include <immintrin.h>

namespace qsid::kernels {

namespace {

// Lanes whose signed add/sub wrapped have the top bit set.
inline bool add_overflows(__m256i a, __m256i b, __m256i r)
{
    __m256i m = _mm256_and_si256(_mm256_xor_si256(a, r), _mm256_xor_si256(b, r));
    return _mm256_movemask_pd(_mm256_castsi256_pd(m)) != 0;
}

inline bool sub_overflows(__m256i a, __m256i b, __m256i r)
{
    __m256i m = _mm256_and_si256(_mm256_xor_si256(a, b), _mm256_xor_si256(a, r));
    return _mm256_movemask_pd(_mm256_castsi256_pd(m)) != 0;
}

std::size_t add_signed(std::int64_t* dst, const std::int64_t* src, std::size_t n, int sign)
{
    std::size_t i = 0;
    if (sign > 0) {
        for (; i + 4 <= n; i += 4) {
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            __m256i r = _mm256_add_epi64(a, b);
            if (add_overflows(a, b, r)) return i + detail::add_signed_scalar(dst + i, src + i, 4, sign);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
        }
    } else {
        for (; i + 4 <= n; i += 4) {
            __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            __m256i r = _mm256_sub_epi64(a, b);
            if (sub_overflows(a, b, r)) return i + detail::add_signed_scalar(dst + i, src + i, 4, sign);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
        }
    }
    return i + detail::add_signed_scalar(dst + i, src + i, n - i, sign);
}

// Descending blocks read only unmodified lower entries, so any e >= 1 works.
std::size_t mul_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    if (n <= e) return n;
    std::size_t top = n;
    while (top >= e + 4) {
        std::int64_t* p = c + top - 4;
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p - e));
        __m256i r;
        bool ovf;
        if (sign > 0) {
            r = _mm256_sub_epi64(a, b);
            ovf = sub_overflows(a, b, r);
        } else {
            r = _mm256_add_epi64(a, b);
            ovf = add_overflows(a, b, r);
        }
        if (ovf) {
            std::size_t k = detail::mul_binomial_scalar_from(c, top, top - 4, e, sign);
            return k == top - 4 ? detail::mul_binomial_scalar_from(c, k, e, e, sign) : k;
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), r);
        top -= 4;
    }
    return detail::mul_binomial_scalar_from(c, top, e, e, sign);
}

// Ascending blocks need e >= 4 so a block never reads its own lanes.
std::size_t div_binomial(std::int64_t* c, std::size_t n, std::size_t e, int sign)
{
    if (e < 4) return detail::div_binomial_scalar_from(c, 0, n, e, sign);
    std::size_t i = e;
    for (; i + 4 <= n; i += 4) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i));
        __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(c + i - e));
        __m256i r;
        bool ovf;
        if (sign > 0) {
            r = _mm256_add_epi64(a, b);
            ovf = add_overflows(a, b, r);
        } else {
            r = _mm256_sub_epi64(a, b);
            ovf = sub_overflows(a, b, r);
        }
        if (ovf) {
            std::size_t k = detail::div_binomial_scalar_from(c, i, i + 4, e, sign);
            return k == i + 4 ? detail::div_binomial_scalar_from(c, k, n, e, sign) : k;
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(c + i), r);
    }
    return detail::div_binomial_scalar_from(c, i, n, e, sign);
}

const Table table{&add_signed, &mul_binomial, &div_binomial};

} // namespace

const Table* detail::avx2_table() { return &table; }

} // namespace qsid::kernels
