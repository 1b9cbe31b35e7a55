#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsid/series.hpp"

namespace qsid {

// sign * q^exp
struct QMonomial {
    int sign = 1;
    Rational exp{0};
    friend bool operator==(const QMonomial&, const QMonomial&) = default;
};

// prod_{i<length} (1 - sign * t^(a + i*z)) with exponents in t units;
// no length means the infinite product.
struct PochTerm {
    int sign = 1;
    std::int64_t a = 0;
    std::int64_t z = 1;
    std::optional<std::int64_t> length;
};

PochTerm make_poch_term(const QMonomial& a, const Rational& z_exp, std::optional<std::int64_t> n, int denom);

// Factors with non-positive exponent, pulled out as scale * t^t_exp.
// A factor (1 - c t^e) with e < 0 equals -c t^e (1 - c t^-e).
struct LeadingPart {
    std::int64_t t_exp = 0;
    BigInt scale = 1;
};

LeadingPart leading_part(const PochTerm& term);

// Multiplies (or divides) s by the factors with positive exponent, plus the
// normalised versions of the negative ones. s is a relative window starting at t^0.
void apply_normalized(QSeries& s, const PochTerm& term, bool divide);

QSeries poch_finite(const QMonomial& a, const Rational& z_exp, std::int64_t n, int denom, std::int64_t order);
QSeries poch_inf(const QMonomial& a, const Rational& z_exp, int denom, std::int64_t order);

// Gaussian polynomial [P, N]_q, exact, D = 1. Zero outside 0 <= N <= P.
QSeries gaussian(std::int64_t P, std::int64_t N);

// Unmemoised recursive count, kept deliberately naive; n <= 60.
BigInt partition_count(int n);

enum class QBinomialVariant { plain, shifted };

struct QBinomialSides {
    QSeries lhs;
    QSeries rhs;
};

// Both sides as exact polynomials on D = 2.
QBinomialSides qbinomial_sum(std::int64_t P, QBinomialVariant variant);

} // namespace qsid
