#pragma once

// Virasoro minimal-model characters M(p, p'): bosonic sums, product forms and
// the two-character combinations that appear as fermionic sums.

#include <cstdint>

#include "qsid/prodexpr.hpp"

namespace qsid {

struct ModelLabel {
    int p = 0;
    int pp = 0; // p'
};

struct FieldLabel {
    int r = 0;
    int s = 0;
};

// Coprime 2 <= p < p', 1 <= r < p, 1 <= s < p'.
void check_model(const ModelLabel& m);
void check_field(const ModelLabel& m, const FieldLabel& f);

Rational conformal_dim(const ModelLabel& m, const FieldLabel& f);
// Central charge of the W_n model (n = 2 is Virasoro).
Rational central_charge(int n, int p, int pp);

// Normalised character (constant term 1), D = 1, through q^order_q.
QSeries bosonic(const ModelLabel& m, const FieldLabel& f, std::int64_t order_q);

enum class ProductCase {
    p_is_2r,  // p = 2r
    pp_is_2s, // p' = 2s
    p_is_3r,  // p = 3r
    pp_is_3s, // p' = 3s
};

bool product_case_holds(ProductCase c, const ModelLabel& m, const FieldLabel& f);
ProductExpr product_char_expr(ProductCase c, const ModelLabel& m, const FieldLabel& f);
QSeries product_char(ProductCase c, const ModelLabel& m, const FieldLabel& f, std::int64_t order_q);

enum class ComboForm { primary, alternative };

// chi_{1,s} + sign * q^shift * chi_{p-1,s} for p = 3, 4.
Rational combo_shift(int p, int pp, int s);
// Smallest substrate that holds every exponent of the combination and its products.
int combo_substrate(int p, int pp, int s);
void check_combo(int p, int pp, int s, int sign);

ProductExpr combo_product_expr(int p, int pp, int s, int sign, ComboForm form);
QSeries combo_product(int p, int pp, int s, int sign, ComboForm form, int denom, std::int64_t t_order);
QSeries bosonic_combo(int p, int pp, int s, int sign, int denom, std::int64_t t_order);

} // namespace qsid
