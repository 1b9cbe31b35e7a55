#pragma once

#include <random>
#include <vector>

#include "qsid/series.hpp"

namespace qsid::test {

inline std::vector<long> coeffs(const QSeries& s)
{
    std::vector<long> out;
    for (const auto& c : s.coefficients()) out.push_back(c.get_si());
    return out;
}

// Coefficients of t^from .. t^to.
inline std::vector<long> window(const QSeries& s, std::int64_t from, std::int64_t to)
{
    std::vector<long> out;
    for (std::int64_t t = from; t <= to; ++t) out.push_back(s.coeff_at(t).get_si());
    return out;
}

inline QSeries random_series(std::mt19937_64& rng, int denom, std::int64_t offset, std::int64_t order, long span = 50)
{
    std::uniform_int_distribution<long> d(-span, span);
    std::vector<BigInt> c(static_cast<std::size_t>(order - offset + 1));
    for (auto& x : c) x = d(rng);
    return QSeries::from_coefficients(denom, offset, c);
}

} // namespace qsid::test
