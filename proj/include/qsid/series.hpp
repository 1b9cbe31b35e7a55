#pragma once

// Truncated Laurent series in t = q^(1/D) with exact integer coefficients.
//
// A series tracks coefficients for t^offset .. t^order. Coefficients live in an
// int64 buffer until an operation overflows, then the whole buffer moves to GMP.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qsid/errors.hpp"
#include "qsid/rational.hpp"

namespace qsid {

using BigInt = mpz_class;

class QSeries {
public:
    QSeries() : QSeries(1, 0, 0) {}

    static QSeries zero(int denom, std::int64_t offset, std::int64_t order);
    static QSeries one(int denom, std::int64_t order);
    static QSeries monomial(const BigInt& c, std::int64_t t_exp, int denom, std::int64_t order);
    // order = offset + coeffs.size() - 1
    static QSeries from_coefficients(int denom, std::int64_t offset, const std::vector<BigInt>& coeffs);

    int denom() const { return denom_; }
    std::int64_t offset() const { return offset_; }
    std::int64_t order() const { return offset_ + static_cast<std::int64_t>(size_) - 1; }
    std::size_t size() const { return size_; }
    bool wide() const { return wide_; }

    // Zero below the offset; TruncationError above the order.
    BigInt coeff_at(std::int64_t t_exp) const;
    std::vector<BigInt> coefficients() const;
    bool is_zero() const;

    QSeries operator-() const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    // Same denom, window and coefficients.
    friend bool operator==(const QSeries& a, const QSeries& b);

    QSeries scaled(const BigInt& c) const;
    QSeries truncated(std::int64_t order) const;
    // Pads with zeros up to a higher order; only valid for exact polynomials.
    QSeries extended(std::int64_t order) const;
    // Multiply by t^k.
    QSeries shifted(std::int64_t k) const;
    // Same series written on t' = q^(1/new_denom); new_denom must be a multiple of denom.
    QSeries refined(int new_denom) const;
    // q -> q^k.
    QSeries substituted(std::int64_t k) const;

    // In-place builders used by the evaluators.
    void mul_binomial_in_place(std::int64_t e, int sign); // *= (1 - sign t^e)
    void div_binomial_in_place(std::int64_t e, int sign); // /= (1 - sign t^e)
    // this += sign * other over this window; other must cover [other.offset, this->order].
    void add_in_place(const QSeries& other, int sign = 1);
    void scale_in_place(const BigInt& c);

private:
    QSeries(int denom, std::int64_t offset, std::size_t size);

    void widen();
    void narrow_if_fits();
    BigInt get(std::size_t i) const { return wide_ ? big_[i] : BigInt(static_cast<long>(small_[i])); }

    int denom_;
    std::int64_t offset_;
    std::size_t size_;
    bool wide_ = false;
    std::vector<std::int64_t> small_;
    std::vector<BigInt> big_;

    friend QSeries invert(const QSeries& a);
};

// Requires a lead coefficient of +1 or -1 at the offset.
QSeries invert(const QSeries& a);

// First t-exponent where the series differ, checked through min(a.order, b.order).
std::optional<std::int64_t> first_mismatch(const QSeries& a, const QSeries& b);

std::string coefficient_csv(const QSeries& s);

} // namespace qsid
