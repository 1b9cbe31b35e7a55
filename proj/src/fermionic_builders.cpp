#include "qsid/fermionic.hpp"

#include <array>

namespace qsid {

namespace {

struct FamilyInfo {
    FormFamily family;
    const char* name;
    Params sample;
};

const std::vector<FamilyInfo>& family_table()
{
    static const std::vector<FamilyInfo> t = {
        {FormFamily::ag, "ag", {{"k", 3}, {"i", 2}}},
        {FormFamily::thm_2_1, "thm_2_1", {{"g", 3}, {"s", 2}}},
        {FormFamily::thm_2_2, "thm_2_2", {{"h", 1}}},
        {FormFamily::thm_2_3, "thm_2_3", {{"g", 3}, {"s", 2}}},
        {FormFamily::thm_2_4, "thm_2_4", {{"h", 2}}},
        {FormFamily::thm_2_5, "thm_2_5", {{"g", 2}, {"s", 2}}},
        {FormFamily::thm_2_6, "thm_2_6", {{"g", 2}}},
        {FormFamily::thm_2_7, "thm_2_7", {{"g", 2}, {"s", 2}}},
        {FormFamily::thm_2_8, "thm_2_8", {{"g", 2}}},
        {FormFamily::m37, "m37", {{"k", 1}}},
        {FormFamily::asw, "asw", {{"k", 1}}},
        {FormFamily::lemma_3_1a, "lemma_3_1a", {{"g", 3}, {"s", 2}}},
        {FormFamily::lemma_3_1b, "lemma_3_1b", {{"g", 3}, {"s", 2}}},
        {FormFamily::lemma_3_2, "lemma_3_2", {{"h", 1}}},
        {FormFamily::lemma_3_3a, "lemma_3_3a", {{"g", 3}, {"s", 2}}},
        {FormFamily::lemma_3_3b, "lemma_3_3b", {{"g", 3}, {"s", 2}}},
        {FormFamily::lemma_3_4, "lemma_3_4", {{"h", 2}}},
        {FormFamily::lemma_3_5a, "lemma_3_5a", {{"g", 2}, {"s", 2}}},
        {FormFamily::lemma_3_5b, "lemma_3_5b", {{"g", 2}, {"s", 2}}},
        {FormFamily::lemma_3_6a, "lemma_3_6a", {{"g", 2}}},
        {FormFamily::lemma_3_6b, "lemma_3_6b", {{"g", 2}}},
        {FormFamily::lemma_3_7a, "lemma_3_7a", {{"g", 2}, {"s", 2}}},
        {FormFamily::lemma_3_7b, "lemma_3_7b", {{"g", 2}, {"s", 2}}},
        {FormFamily::lemma_3_8a, "lemma_3_8a", {{"g", 2}}},
        {FormFamily::lemma_3_8b, "lemma_3_8b", {{"g", 2}}},
        {FormFamily::euler_1, "euler_1", {}},
        {FormFamily::euler_2, "euler_2", {}},
        {FormFamily::rogers_1, "rogers_1", {}},
        {FormFamily::rogers_2, "rogers_2", {}},
        {FormFamily::rogers_3, "rogers_3", {}},
        {FormFamily::rogers_4a, "rogers_4a", {}},
        {FormFamily::rogers_4b, "rogers_4b", {}},
        {FormFamily::selberg_1, "selberg_1", {}},
        {FormFamily::selberg_2, "selberg_2", {}},
        {FormFamily::selberg_3, "selberg_3", {}},
    };
    return t;
}

std::int64_t param(const Params& p, const char* name)
{
    auto it = p.find(name);
    if (it == p.end()) throw DomainError(std::string("missing parameter '") + name + "'");
    return it->second;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

void reject_extra(const Params& p, std::initializer_list<const char*> allowed)
{
    for (const auto& [k, v] : p) {
        bool found = false;
        for (const char* a : allowed) found = found || k == a;
        if (!found) throw DomainError("unknown parameter '" + k + "'");
    }
}

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

class Builder {
public:
    Builder(std::string family, int chain_len, std::vector<Variable> extras)
    {
        f_.family = std::move(family);
        f_.chain_len = chain_len;
        f_.extra_vars = std::move(extras);
        std::size_t n = f_.num_vars();
        f_.quad.assign(n, std::vector<Rational>(n, Rational(0)));
        f_.lin.assign(n, Rational(0));
        f_.tail_start = chain_len + 1;
    }

    std::size_t n() const { return f_.num_vars(); }

    // Adds c * x_i * x_j to the exponent.
    void quad(std::size_t i, std::size_t j, const Rational& c)
    {
        if (i == j) {
            f_.quad[i][i] += c;
        } else {
            f_.quad[i][j] += c / 2;
            f_.quad[j][i] += c / 2;
        }
    }

    void lin(std::size_t i, const Rational& c) { f_.lin[i] += c; }
    void constant(const Rational& c) { f_.constant += c; }
    void tail(int s) { f_.tail_start = s; }

    // (arg; q^base)_{x_var + shift}
    void denom(std::size_t var, const QMonomial& arg = {1, 1}, const Rational& base = 1, std::int64_t shift = 0)
    {
        DenomFactor d{arg, base, zero_form()};
        d.index.coeffs[var] = 1;
        d.index.constant = shift;
        f_.denom_factors.push_back(d);
    }

    // (q)_{N_1-N_2} ... (q)_{N_{c-1}-N_c} (q)_{N_c}
    void chain_denoms()
    {
        for (int j = 0; j < f_.chain_len; ++j) {
            DenomFactor d{{1, 1}, 1, zero_form()};
            d.index.coeffs[j] = 1;
            if (j + 1 < f_.chain_len) d.index.coeffs[j + 1] = -1;
            f_.denom_factors.push_back(d);
        }
    }

    void gaussian(const AffineForm& top, std::size_t bottom) { f_.gaussian_factor = GaussianFactor{top, bottom}; }

    AffineForm zero_form() const { return AffineForm{std::vector<Rational>(n(), Rational(0)), Rational(0)}; }

    FermionicFormSpec done() { return std::move(f_); }

private:
    FermionicFormSpec f_;
};

std::vector<Variable> free_vars(const std::string& prefix, int count)
{
    std::vector<Variable> v;
    for (int i = 1; i <= count; ++i) v.push_back({prefix + std::to_string(i), Parity::any});
    return v;
}

// Chain form: sum_j N_j (N_j + a M) + ... with chain N_1..N_c, M the last variable.
Builder chain_with_m(const std::string& family, int c)
{
    Builder b(family, c, {{"M", Parity::any}});
    for (int j = 0; j < c; ++j) b.quad(j, j, 1);
    b.chain_denoms();
    return b;
}

// Lemma form on n-coordinates n_1..n_c (N_j = n_j + ... + n_c) plus trailing variables.
// Adds sum_j N_j^2 + coupling * sum_j N_j * x_m and the tail N_s + ... + N_c.
Builder lemma_base(const std::string& family, int c, std::vector<Variable> trailing, const Rational& coupling,
                   int tail_s)
{
    std::vector<Variable> vars = free_vars("n", c);
    for (auto& v : trailing) vars.push_back(v);
    Builder b(family, 0, vars);
    std::size_t m = static_cast<std::size_t>(c);
    for (int i = 1; i <= c; ++i) {
        for (int l = 1; l <= c; ++l) {
            // Off-diagonal min(i,l) appears twice in the symmetric sum.
            if (i == l)
                b.quad(i - 1, i - 1, i);
            else if (i < l)
                b.quad(i - 1, l - 1, 2 * std::min(i, l));
        }
        b.quad(i - 1, m, coupling * i);
        if (i >= tail_s) b.lin(i - 1, i - tail_s + 1);
        b.denom(i - 1);
    }
    return b;
}

void check_gs(std::int64_t g, std::int64_t s)
{
    require(g >= 1, "need g >= 1");
    require(s >= 1 && s <= g + 1, "need 1 <= s <= g+1");
}

FermionicFormSpec build_ag(const Params& p)
{
    reject_extra(p, {"k", "i"});
    std::int64_t k = param(p, "k"), i = param(p, "i");
    require(k >= 1, "need k >= 1");
    require(i >= 1 && i <= k, "need 1 <= i <= k");
    int c = static_cast<int>(k - 1);
    Builder b("ag", c, {});
    for (int j = 0; j < c; ++j) b.quad(j, j, 1);
    b.tail(static_cast<int>(i));
    b.chain_denoms();
    return b.done();
}

// thm_2_1 and thm_2_3 differ only in the M^2 and M coefficients.
FermionicFormSpec build_p3_theorem(const char* family, std::int64_t g, std::int64_t s, const Rational& mm,
                                   const Rational& ml)
{
    int c = static_cast<int>(g - 1);
    Builder b = chain_with_m(family, c);
    std::size_t M = c;
    for (int j = 0; j < c; ++j) b.quad(j, M, 1);
    b.quad(M, M, mm);
    b.lin(M, ml);
    b.tail(static_cast<int>(s));
    b.denom(M);
    return b.done();
}

FermionicFormSpec build_p3_h_theorem(const char* family, int c, const Rational& mm, int tail)
{
    Builder b = chain_with_m(family, c);
    std::size_t M = c;
    for (int j = 0; j < c; ++j) b.quad(j, M, 1);
    b.quad(M, M, mm);
    b.lin(M, mm);
    b.tail(tail);
    b.denom(M);
    return b.done();
}

// Families with (q^(1/2);q)_{M+e} (q^2;q^2)_M.
FermionicFormSpec build_p4_theorem(const char* family, std::int64_t g, bool shifted_n, const Rational& mm,
                                   const Rational& ml, int tail, std::int64_t half_shift)
{
    int c = static_cast<int>(g - 1);
    Builder b = chain_with_m(family, c);
    std::size_t M = c;
    for (int j = 0; j < c; ++j) {
        b.quad(j, M, 2);
        if (shifted_n) b.lin(j, 1);
    }
    b.quad(M, M, mm);
    b.lin(M, ml);
    b.tail(tail);
    b.denom(M, {1, R(1, 2)}, 1, half_shift);
    b.denom(M, {1, 2}, 2);
    return b.done();
}

FermionicFormSpec build_m37(const Params& p)
{
    reject_extra(p, {"k"});
    std::int64_t k = param(p, "k");
    require(k >= 1 && k <= 4, "need 1 <= k <= 4");
    Builder b("m37", 0, free_vars("n", 4));
    // (n1+n2+n3)^2 + (n2+n3)^2 + n3^2 + n4^2 + (n1+2n2+3n3) n4
    const std::array<std::array<int, 3>, 3> sq = {{{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}};
    for (const auto& row : sq)
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                if (row[i] && row[j]) b.quad(i, j, i == j ? 1 : 2);
    b.quad(3, 3, 1);
    for (int i = 0; i < 3; ++i) b.quad(i, 3, i + 1);
    const std::array<std::array<int, 4>, 4> lin = {{{1, 2, 3, 2}, {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 1, 2, 1}}};
    for (int i = 0; i < 4; ++i) b.lin(i, lin[k - 1][i]);
    for (int i = 0; i < 4; ++i) b.denom(i);
    return b.done();
}

FermionicFormSpec build_asw(const Params& p)
{
    reject_extra(p, {"k"});
    std::int64_t k = param(p, "k");
    require(k >= 1 && k <= 5, "need 1 <= k <= 5 (5 is the second form of the fourth identity)");
    Builder b("asw", 0, free_vars("n", 2));
    b.quad(0, 0, 1);
    b.quad(0, 1, -1);
    b.quad(1, 1, 1);
    if (k == 1 || k == 4) b.lin(0, 1);
    if (k == 1 || k == 2 || k == 5) b.lin(1, 1);
    AffineForm top = b.zero_form();
    top.coeffs[0] = 2;
    top.constant = (k == 2 || k == 4) ? 1 : 0;
    b.gaussian(top, 1);
    b.denom(0);
    return b.done();
}

enum class Half { even, odd };

Parity parity_of(Half h) { return h == Half::even ? Parity::even : Parity::odd; }

FermionicFormSpec build_lemma_p3(const char* family, std::int64_t g, std::int64_t s, const Rational& mm,
                                 const Rational& ml, Half m_par, const Rational& pref)
{
    int c = static_cast<int>(g - 1);
    Builder b = lemma_base(family, c, {{"m", parity_of(m_par)}}, 1, static_cast<int>(s));
    std::size_t m = c;
    b.quad(m, m, mm);
    b.lin(m, ml);
    b.constant(pref);
    b.denom(m);
    return b.done();
}

FermionicFormSpec build_lemma_p3_h(const char* family, int c, const Rational& mm, int tail)
{
    Builder b = lemma_base(family, c, {{"m", Parity::any}}, 1, tail);
    std::size_t m = c;
    b.quad(m, m, mm);
    b.lin(m, mm);
    b.denom(m);
    return b.done();
}

// Lemma forms with m1, m2 and a Gaussian [m1/2 (+1/2), m2].
FermionicFormSpec build_lemma_p4(const char* family, std::int64_t g, int tail, const Rational& m1m1,
                                 const Rational& m1m2, const Rational& m1_lin, const Rational& m2_lin, Half p1,
                                 Half p2, const Rational& pref)
{
    int c = static_cast<int>(g - 1);
    Builder b = lemma_base(family, c, {{"m1", parity_of(p1)}, {"m2", parity_of(p2)}}, 1, tail);
    std::size_t m1 = c, m2 = c + 1;
    b.quad(m1, m1, m1m1);
    b.quad(m2, m2, R(1, 2));
    b.quad(m1, m2, m1m2);
    b.lin(m1, m1_lin);
    b.lin(m2, m2_lin);
    b.constant(pref);
    b.denom(m1);
    AffineForm top = b.zero_form();
    top.coeffs[m1] = R(1, 2);
    top.constant = p1 == Half::odd ? R(1, 2) : R(0);
    b.gaussian(top, m2);
    return b.done();
}

// Single-sum forms written in the substituted variable.
FermionicFormSpec build_special(FormFamily f)
{
    Builder b(family_name(f), 0, {{"m", Parity::any}});
    auto set = [&](const Rational& mm, const Rational& ml) {
        b.quad(0, 0, mm);
        b.lin(0, ml);
    };
    switch (f) {
    case FormFamily::euler_1:
        set(R(1, 2), 0);
        b.denom(0);
        break;
    case FormFamily::euler_2:
        set(R(1, 2), R(-1, 2));
        b.denom(0);
        break;
    case FormFamily::rogers_1:
        set(1, 2);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::rogers_2:
        set(1, 0);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::rogers_3:
        set(3, 0);
        b.denom(0, {1, 1}, 2);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::rogers_4a:
        set(3, 2);
        b.denom(0, {1, 1}, 2, 1);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::rogers_4b:
        set(3, -2);
        b.denom(0, {1, 1}, 2);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::selberg_1:
        set(2, 2);
        b.denom(0, {1, 1}, 2);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::selberg_2:
        set(2, 0);
        b.denom(0, {1, 1}, 2);
        b.denom(0, {1, 4}, 4);
        break;
    case FormFamily::selberg_3:
        set(2, 2);
        b.denom(0, {1, 1}, 2, 1);
        b.denom(0, {1, 4}, 4);
        break;
    default: throw Error("not a special family");
    }
    return b.done();
}

} // namespace

const std::vector<FormFamily>& all_families()
{
    static const std::vector<FormFamily> v = [] {
        std::vector<FormFamily> out;
        for (const auto& e : family_table()) out.push_back(e.family);
        return out;
    }();
    return v;
}

std::string family_name(FormFamily f)
{
    for (const auto& e : family_table())
        if (e.family == f) return e.name;
    return "unknown";
}

std::optional<FormFamily> family_from_name(const std::string& name)
{
    for (const auto& e : family_table())
        if (name == e.name) return e.family;
    return std::nullopt;
}

Params sample_params(FormFamily f)
{
    for (const auto& e : family_table())
        if (e.family == f) return e.sample;
    return {};
}

FermionicFormSpec build_form(FormFamily family, const Params& p)
{
    const char* name = nullptr;
    for (const auto& e : family_table())
        if (e.family == family) name = e.name;

    auto gs = [&]() {
        reject_extra(p, {"g", "s"});
        std::int64_t g = param(p, "g"), s = param(p, "s");
        check_gs(g, s);
        return std::pair{g, s};
    };
    auto g_only = [&]() {
        reject_extra(p, {"g"});
        std::int64_t g = param(p, "g");
        require(g >= 1, "need g >= 1");
        return g;
    };
    auto h_only = [&]() {
        reject_extra(p, {"h"});
        std::int64_t h = param(p, "h");
        require(h >= 1, "need h >= 1");
        return h;
    };

    switch (family) {
    case FormFamily::ag: return build_ag(p);
    case FormFamily::thm_2_1: {
        auto [g, s] = gs();
        return build_p3_theorem(name, g, s, R(g + 1, 4), R(g - s, 2));
    }
    case FormFamily::thm_2_2: {
        std::int64_t h = h_only();
        return build_p3_h_theorem(name, static_cast<int>(2 * h), R(h + 1, 2), static_cast<int>(h + 1));
    }
    case FormFamily::thm_2_3: {
        auto [g, s] = gs();
        return build_p3_theorem(name, g, s, R(g, 4), R(g - s + 1, 2));
    }
    case FormFamily::thm_2_4: {
        std::int64_t h = h_only();
        return build_p3_h_theorem(name, static_cast<int>(2 * h - 1), R(h, 2), static_cast<int>(h));
    }
    case FormFamily::thm_2_5: {
        auto [g, s] = gs();
        return build_p4_theorem(name, g, false, R(2 * g + 1, 2), R(g - s), static_cast<int>(s), 0);
    }
    case FormFamily::thm_2_6: {
        std::int64_t g = g_only();
        return build_p4_theorem(name, g, true, R(2 * g + 1, 2), R(g), static_cast<int>(g), 1);
    }
    case FormFamily::thm_2_7: {
        auto [g, s] = gs();
        return build_p4_theorem(name, g, false, R(g), R(g + 1 - s), static_cast<int>(s), 0);
    }
    case FormFamily::thm_2_8: {
        std::int64_t g = g_only();
        return build_p4_theorem(name, g, true, R(g), R(g), static_cast<int>(g), 1);
    }
    case FormFamily::m37: return build_m37(p);
    case FormFamily::asw: return build_asw(p);
    case FormFamily::lemma_3_1a:
    case FormFamily::lemma_3_1b: {
        auto [g, s] = gs();
        bool b = family == FormFamily::lemma_3_1b;
        return build_lemma_p3(name, g, s, R(g + 1, 4), R(g - s, 2), b ? Half::odd : Half::even,
                              b ? R(-3 * g, 4) + R(s, 2) - R(1, 4) : R(0));
    }
    case FormFamily::lemma_3_2: {
        std::int64_t h = h_only();
        return build_lemma_p3_h(name, static_cast<int>(2 * h), R(h + 1, 2), static_cast<int>(h + 1));
    }
    case FormFamily::lemma_3_3a:
    case FormFamily::lemma_3_3b: {
        auto [g, s] = gs();
        bool b = family == FormFamily::lemma_3_3b;
        return build_lemma_p3(name, g, s, R(g, 4), R(g - s + 1, 2), b ? Half::odd : Half::even,
                              b ? R(-3 * g, 4) + R(s, 2) - R(1, 2) : R(0));
    }
    case FormFamily::lemma_3_4: {
        std::int64_t h = h_only();
        return build_lemma_p3_h(name, static_cast<int>(2 * h - 1), R(h, 2), static_cast<int>(h));
    }
    case FormFamily::lemma_3_5a:
    case FormFamily::lemma_3_5b: {
        auto [g, s] = gs();
        bool b = family == FormFamily::lemma_3_5b;
        return build_lemma_p4(name, g, static_cast<int>(s), R(g + 1, 4), R(-1, 2), R(g - s, 2), 0, Half::even,
                              b ? Half::odd : Half::even, b ? R(s) - R(2 * g) - R(1, 2) : R(0));
    }
    case FormFamily::lemma_3_6a:
    case FormFamily::lemma_3_6b: {
        std::int64_t g = g_only();
        bool b = family == FormFamily::lemma_3_6b;
        return build_lemma_p4(name, g, static_cast<int>(g), R(g + 1, 4), R(-1, 2), 0, R(-1, 2), Half::odd,
                              b ? Half::odd : Half::even, b ? R(-(g - 1), 4) : R(-(g + 1), 4));
    }
    case FormFamily::lemma_3_7a:
    case FormFamily::lemma_3_7b: {
        auto [g, s] = gs();
        bool b = family == FormFamily::lemma_3_7b;
        return build_lemma_p4(name, g, static_cast<int>(s), R(g, 4), 0, R(g + 1 - s, 2), 0, Half::even,
                              b ? Half::odd : Half::even, b ? R(s) - R(2 * g) - R(3, 2) : R(0));
    }
    case FormFamily::lemma_3_8a:
    case FormFamily::lemma_3_8b: {
        std::int64_t g = g_only();
        bool b = family == FormFamily::lemma_3_8b;
        return build_lemma_p4(name, g, static_cast<int>(g), R(g, 4), 0, 0, 0, Half::odd, b ? Half::odd : Half::even,
                              b ? R(-(g + 2), 4) : R(-g, 4));
    }
    default:
        reject_extra(p, {});
        return build_special(family);
    }
}

} // namespace qsid
