#include "qsid/qfunctions.hpp"

#include <algorithm>
#include <limits>

namespace qsid {

PochTerm make_poch_term(const QMonomial& a, const Rational& z_exp, std::optional<std::int64_t> n, int denom)
{
    if (z_exp <= 0) throw DomainError("q-Pochhammer base exponent must be positive");
    if (n && *n < 0) throw DomainError("q-Pochhammer length must be non-negative");
    if (a.sign != 1 && a.sign != -1) throw DomainError("monomial sign must be +1 or -1");
    return PochTerm{a.sign, to_t_units(a.exp, denom), to_t_units(z_exp, denom), n};
}

namespace {

// Number of factors with exponent <= 0.
std::int64_t non_positive_count(const PochTerm& term)
{
    if (term.a > 0) return 0;
    std::int64_t k = -term.a / term.z + 1;
    return term.length ? std::min(k, *term.length) : k;
}

} // namespace

LeadingPart leading_part(const PochTerm& term)
{
    LeadingPart lp;
    std::int64_t k = non_positive_count(term);
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t e = term.a + i * term.z;
        if (e == 0) {
            if (term.sign == 1) throw VanishingProductError("product contains the factor (1 - q^0)");
            lp.scale *= 2;
        } else {
            lp.t_exp += e;
            lp.scale *= -term.sign;
        }
    }
    return lp;
}

void apply_normalized(QSeries& s, const PochTerm& term, bool divide)
{
    const std::int64_t len = static_cast<std::int64_t>(s.size());
    auto apply = [&](std::int64_t e) {
        if (e >= len) return;
        if (divide)
            s.div_binomial_in_place(e, term.sign);
        else
            s.mul_binomial_in_place(e, term.sign);
    };
    std::int64_t k = non_positive_count(term);
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t e = term.a + i * term.z;
        if (e < 0) apply(-e);
    }
    std::int64_t stop = term.length ? *term.length : std::numeric_limits<std::int64_t>::max();
    for (std::int64_t i = k; i < stop; ++i) {
        std::int64_t e = term.a + i * term.z;
        if (e >= len) break;
        apply(e);
    }
}

namespace {

QSeries poch_eval(const PochTerm& term, int denom, std::int64_t order)
{
    LeadingPart lp = leading_part(term);
    if (lp.t_exp > order) return QSeries::zero(denom, order, order);
    QSeries s = QSeries::monomial(lp.scale, 0, denom, order - lp.t_exp);
    apply_normalized(s, term, false);
    return s.shifted(lp.t_exp);
}

} // namespace

QSeries poch_finite(const QMonomial& a, const Rational& z_exp, std::int64_t n, int denom, std::int64_t order)
{
    return poch_eval(make_poch_term(a, z_exp, n, denom), denom, order);
}

QSeries poch_inf(const QMonomial& a, const Rational& z_exp, int denom, std::int64_t order)
{
    return poch_eval(make_poch_term(a, z_exp, std::nullopt, denom), denom, order);
}

QSeries gaussian(std::int64_t P, std::int64_t N)
{
    if (N < 0 || N > P) return QSeries::zero(1, 0, 0);
    // Row p holds [p, k] for k = 0..N; [p, k] = [p-1, k-1] + q^k [p-1, k].
    std::vector<std::vector<BigInt>> row(static_cast<std::size_t>(N + 1));
    row[0] = {1};
    for (std::int64_t p = 1; p <= P; ++p) {
        for (std::int64_t k = std::min(p, N); k >= 1; --k) {
            auto& cur = row[static_cast<std::size_t>(k)];
            const auto& lower = row[static_cast<std::size_t>(k - 1)];
            std::size_t deg = static_cast<std::size_t>(k * (p - k));
            std::vector<BigInt> next(deg + 1);
            for (std::size_t i = 0; i < lower.size() && i <= deg; ++i) next[i] += lower[i];
            for (std::size_t i = 0; i < cur.size(); ++i) next[i + static_cast<std::size_t>(k)] += cur[i];
            cur = std::move(next);
        }
    }
    return QSeries::from_coefficients(1, 0, row[static_cast<std::size_t>(N)]);
}

namespace {

BigInt count_parts(int n, int max_part)
{
    if (n == 0) return 1;
    BigInt total = 0;
    for (int j = std::min(n, max_part); j >= 1; --j) total += count_parts(n - j, j);
    return total;
}

} // namespace

BigInt partition_count(int n)
{
    if (n < 0) return 0;
    if (n > 60) throw DomainError("naive partition oracle is capped at n <= 60");
    return count_parts(n, n);
}

QBinomialSides qbinomial_sum(std::int64_t P, QBinomialVariant variant)
{
    if (P < 0) throw DomainError("P must be non-negative");
    const int D = 2;
    // t-exponent window for sum_k q^(k^2/2 + c k) [P, k], c = 0 or -P.
    std::int64_t lo = 0, hi = 0;
    for (std::int64_t k = 0; k <= P; ++k) {
        std::int64_t base = variant == QBinomialVariant::plain ? k * k : k * k - 2 * P * k;
        lo = std::min(lo, base);
        hi = std::max(hi, base + 2 * k * (P - k));
    }
    QSeries lhs = QSeries::zero(D, lo, hi);
    for (std::int64_t k = 0; k <= P; ++k) {
        std::int64_t base = variant == QBinomialVariant::plain ? k * k : k * k - 2 * P * k;
        QSeries g = gaussian(P, k).refined(D).shifted(base);
        lhs.add_in_place(g.order() >= hi ? g.truncated(hi) : g.extended(hi));
    }
    QSeries rhs;
    if (variant == QBinomialVariant::plain) {
        rhs = poch_finite({-1, Rational(1, 2)}, 1, P, D, hi);
    } else {
        rhs = poch_finite({-1, Rational(1, 2)}, 1, P, D, hi + P * P).shifted(-P * P);
    }
    return {lhs, rhs};
}

} // namespace qsid
