#include "qsid/characters.hpp"

#include <numeric>
#include <set>
#include <string>

namespace qsid {

namespace {

std::string label(const ModelLabel& m) { return "M(" + std::to_string(m.p) + "," + std::to_string(m.pp) + ")"; }

QMonomial mono(int sign, const Rational& e) { return QMonomial{sign, e}; }

PochFactor inf_factor(std::vector<QMonomial> args, QMonomial base)
{
    return PochFactor{std::move(args), base, std::nullopt};
}

PochFactor q_inf() { return inf_factor({mono(1, 1)}, mono(1, 1)); }

} // namespace

void check_model(const ModelLabel& m)
{
    if (m.p < 2 || m.pp <= m.p) throw DomainError(label(m) + ": need 2 <= p < p'");
    if (std::gcd(m.p, m.pp) != 1) throw DomainError(label(m) + ": p and p' must be coprime");
}

void check_field(const ModelLabel& m, const FieldLabel& f)
{
    check_model(m);
    if (f.r < 1 || f.r >= m.p || f.s < 1 || f.s >= m.pp)
        throw DomainError(label(m) + ": field (r,s)=(" + std::to_string(f.r) + "," + std::to_string(f.s) +
                          ") out of range");
}

Rational conformal_dim(const ModelLabel& m, const FieldLabel& f)
{
    check_field(m, f);
    std::int64_t a = std::int64_t(m.pp) * f.r - std::int64_t(m.p) * f.s;
    std::int64_t b = m.pp - m.p;
    return Rational(a * a - b * b, 4 * std::int64_t(m.p) * m.pp);
}

Rational central_charge(int n, int p, int pp)
{
    if (n < 2) throw DomainError("W_n needs n >= 2");
    check_model({p, pp});
    std::int64_t d = pp - p;
    return Rational(n - 1) * (Rational(1) - Rational(std::int64_t(n) * (n + 1) * d * d, std::int64_t(p) * pp));
}

QSeries bosonic(const ModelLabel& m, const FieldLabel& f, std::int64_t order_q)
{
    check_field(m, f);
    const std::int64_t pq = std::int64_t(m.p) * m.pp;
    const std::int64_t lin = std::int64_t(m.pp) * f.r + std::int64_t(m.p) * f.s;
    QSeries theta = QSeries::zero(1, 0, order_q);
    // Both exponents are at least lambda^2 p p' - |lambda| (p'r + ps), increasing for |lambda| >= 1.
    for (std::int64_t k = 0; k == 0 || k * k * pq - k * lin <= order_q; ++k) {
        for (std::int64_t lam : {k, -k}) {
            std::int64_t e1 = lam * lam * pq + lam * (std::int64_t(m.pp) * f.r - std::int64_t(m.p) * f.s);
            std::int64_t e2 = (lam * m.p + f.r) * (lam * m.pp + f.s);
            if (e1 <= order_q) theta.add_in_place(QSeries::monomial(1, e1, 1, order_q), 1);
            if (e2 <= order_q) theta.add_in_place(QSeries::monomial(1, e2, 1, order_q), -1);
            if (k == 0) break;
        }
    }
    return theta * invert(poch_inf(mono(1, 1), 1, 1, order_q));
}

bool product_case_holds(ProductCase c, const ModelLabel& m, const FieldLabel& f)
{
    switch (c) {
    case ProductCase::p_is_2r: return m.p == 2 * f.r;
    case ProductCase::pp_is_2s: return m.pp == 2 * f.s;
    case ProductCase::p_is_3r: return m.p == 3 * f.r;
    case ProductCase::pp_is_3s: return m.pp == 3 * f.s;
    }
    return false;
}

ProductExpr product_char_expr(ProductCase c, const ModelLabel& m, const FieldLabel& f)
{
    check_field(m, f);
    if (!product_case_holds(c, m, f)) throw DomainError(label(m) + ": product case does not apply to this field");
    const std::int64_t r = f.r, s = f.s, p = m.p, pp = m.pp;
    std::int64_t mod = 0;
    std::set<std::int64_t> excluded;
    auto exclude = [&](std::int64_t sub, std::vector<std::int64_t> residues) {
        for (std::int64_t a = 1; a <= mod; ++a)
            for (std::int64_t res : residues)
                if (((a - res) % sub + sub) % sub == 0) excluded.insert(a);
    };
    switch (c) {
    case ProductCase::p_is_2r:
        mod = r * pp;
        exclude(mod, {0, r * s, -r * s});
        break;
    case ProductCase::pp_is_2s:
        mod = s * p;
        exclude(mod, {0, r * s, -r * s});
        break;
    case ProductCase::p_is_3r:
        mod = 4 * r * pp;
        exclude(2 * r * pp, {0, r * s, -r * s});
        exclude(mod, {2 * r * (pp - s), -2 * r * (pp - s)});
        break;
    case ProductCase::pp_is_3s:
        mod = 4 * s * p;
        exclude(2 * s * p, {0, r * s, -r * s});
        exclude(mod, {2 * s * (p - r), -2 * s * (p - r)});
        break;
    }
    PochFactor den{{}, mono(1, mod), std::nullopt};
    for (std::int64_t a = 1; a <= mod; ++a)
        if (!excluded.count(a)) den.args.push_back(mono(1, a));
    ProductExpr e;
    if (!den.args.empty()) e.denominator.push_back(den);
    return e;
}

QSeries product_char(ProductCase c, const ModelLabel& m, const FieldLabel& f, std::int64_t order_q)
{
    return eval_product(product_char_expr(c, m, f), 1, order_q);
}

Rational combo_shift(int p, int pp, int s)
{
    if (p == 3) return Rational(pp, 4) - Rational(s, 2);
    if (p == 4) return Rational(pp, 2) - Rational(s);
    throw DomainError("character combinations are defined for p = 3 and p = 4");
}

void check_combo(int p, int pp, int s, int sign)
{
    if (p != 3 && p != 4) throw DomainError("character combinations are defined for p = 3 and p = 4");
    if (p == 3 && pp % 3 == 0) throw DomainError("p = 3 needs p' not divisible by 3");
    if (p == 4 && pp % 2 == 0) throw DomainError("p = 4 needs odd p'");
    if (s < 1 || s >= pp) throw DomainError("need 1 <= s < p'");
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    check_model({p, pp});
}

int combo_substrate(int p, int pp, int s)
{
    if (p == 4) return 2;
    if (pp % 2 != 0) return 4;
    return ((pp / 2 - s) % 2 != 0) ? 2 : 1;
}

ProductExpr combo_product_expr(int p, int pp, int s, int sign, ComboForm form)
{
    check_combo(p, pp, s, sign);
    const Rational h(pp, 2);
    ProductExpr e;
    if (p == 3) {
        const Rational a = Rational(pp, 4) - Rational(s, 2), b = Rational(pp, 4) + Rational(s, 2);
        if (form == ComboForm::primary) {
            e.numerator = {inf_factor({mono(-sign, a), mono(-sign, b), mono(1, h)}, mono(1, h)),
                           inf_factor({mono(1, s), mono(1, pp - s)}, mono(1, pp))};
            e.denominator = {q_inf()};
        } else {
            if (pp == 2 * s) throw DomainError("the alternative p = 3 form needs p' != 2s");
            e.numerator = {inf_factor({mono(1, s), mono(1, h - s), mono(1, h)}, mono(1, h))};
            e.denominator = {q_inf(), inf_factor({mono(sign, a), mono(sign, b)}, mono(1, h))};
        }
        return e;
    }
    if (form == ComboForm::primary) {
        e.numerator = {inf_factor({mono(1, s), mono(-sign, h - s), mono(-sign, h)}, mono(-sign, h))};
    } else {
        e.numerator = {inf_factor({mono(-sign, h - s), mono(-sign, h), mono(-sign, h + s), mono(1, s),
                                   mono(1, pp - s), mono(1, pp)},
                                  mono(1, pp))};
    }
    e.denominator = {q_inf()};
    return e;
}

QSeries combo_product(int p, int pp, int s, int sign, ComboForm form, int denom, std::int64_t t_order)
{
    int need = combo_substrate(p, pp, s);
    if (denom % need != 0)
        throw SubstrateError("combination needs D to be a multiple of " + std::to_string(need));
    return eval_product(combo_product_expr(p, pp, s, sign, form), denom, t_order);
}

QSeries bosonic_combo(int p, int pp, int s, int sign, int denom, std::int64_t t_order)
{
    check_combo(p, pp, s, sign);
    Rational shift = combo_shift(p, pp, s);
    std::int64_t st = to_t_units(shift, denom);
    std::int64_t order_q = (t_order + (st < 0 ? -st : 0)) / denom + 2;
    QSeries c1 = bosonic({p, pp}, {1, s}, order_q).refined(denom).truncated(t_order);
    QSeries c2 = bosonic({p, pp}, {p - 1, s}, order_q).refined(denom);
    c2 = c2.truncated(std::min(c2.order(), t_order - st)).shifted(st);
    if (sign < 0) c2 = -c2;
    return c1 + c2;
}

} // namespace qsid
