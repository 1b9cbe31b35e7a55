#pragma once

// Textual products of q-Pochhammer symbols, e.g.
//   (-q^(1/2),q^3;q^5)_inf (q;q^2)_4 / (q;q)_inf

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsid/qfunctions.hpp"

namespace qsid {

struct PochFactor {
    std::vector<QMonomial> args;
    QMonomial base{1, 1};
    std::optional<std::int64_t> length; // nullopt: infinite
    friend bool operator==(const PochFactor&, const PochFactor&) = default;
};

struct ProductExpr {
    std::vector<PochFactor> numerator;
    std::vector<PochFactor> denominator;
    friend bool operator==(const ProductExpr&, const ProductExpr&) = default;
};

// Throws ParseError with the byte position of the offending character.
ProductExpr parse_product(std::string_view text);

std::string render(const ProductExpr& expr);
std::string render(const QMonomial& m);

// Smallest D on which every exponent is integral.
int natural_denom(const ProductExpr& expr);

// Numerator times the inverse of the denominator, through t^t_order on D.
QSeries eval_product(const ProductExpr& expr, int denom, std::int64_t t_order);

} // namespace qsid
