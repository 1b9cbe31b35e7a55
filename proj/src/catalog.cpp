#include <fmt/format.h>

#include <numeric>

#include "qsid/verify.hpp"

namespace qsid {

namespace {

using R = Rational;

std::int64_t get(const Params& p, const std::string& k)
{
    auto it = p.find(k);
    if (it == p.end()) throw DomainError("missing parameter '" + k + "'");
    return it->second;
}

int geti(const Params& p, const std::string& k) { return static_cast<int>(get(p, k)); }

void expect_names(const Params& p, const std::vector<std::string>& names)
{
    for (const auto& n : names) get(p, n);
    for (const auto& [k, v] : p)
        if (std::find(names.begin(), names.end(), k) == names.end())
            throw DomainError("unknown parameter '" + k + "'");
}

std::int64_t cap(const Caps& c, const std::string& k)
{
    auto it = c.find(k);
    return it == c.end() ? default_caps().at(k) : it->second;
}

// Moves a series onto the record substrate.
QSeries on_denom(const QSeries& s, int D)
{
    if (s.denom() == D) return s;
    if (D % s.denom() != 0) throw SubstrateError(fmt::format("series on D={} cannot be written on D={}", s.denom(), D));
    return s.refined(D);
}

QSeries to_order(const QSeries& s, std::int64_t t_order)
{
    return s.order() > t_order ? s.truncated(t_order) : s;
}

std::string q(int sign, const Rational& e) { return render(QMonomial{sign, e}); }

QSeries eval_text(const std::string& text, int D, std::int64_t T) { return eval_product(parse_product(text), D, T); }

SeriesSide text_side(std::function<std::string(const Params&)> text)
{
    return [text](const Params& p, int D, std::int64_t T, const BuildContext&) { return eval_text(text(p), D, T); };
}

SeriesSide form_side(FormFamily f, std::function<Params(const Params&)> map = {})
{
    return [f, map](const Params& p, int D, std::int64_t T, const BuildContext& ctx) {
        return eval_form(ctx.form(f, map ? map(p) : p), D, T);
    };
}

// a + q^shift b with shift in q-units.
SeriesSide split_side(FormFamily a, FormFamily b, std::function<Rational(const Params&)> shift)
{
    return [a, b, shift](const Params& p, int D, std::int64_t T, const BuildContext& ctx) {
        std::int64_t sh = to_t_units(shift(p), D);
        QSeries sa = eval_form(ctx.form(a, p), D, T);
        QSeries sb = eval_form(ctx.form(b, p), D, T - sh).shifted(sh);
        return sa + sb;
    };
}

SeriesSide bosonic_side(std::function<std::pair<ModelLabel, FieldLabel>(const Params&)> label)
{
    return [label](const Params& p, int D, std::int64_t T, const BuildContext&) {
        auto [m, f] = label(p);
        return to_order(bosonic(m, f, T / D + 1).refined(D), T);
    };
}

std::vector<Params> none(const Caps&) { return {Params{}}; }

std::vector<Params> gs_range(std::int64_t gmax, std::int64_t gmin = 1)
{
    std::vector<Params> out;
    for (std::int64_t g = gmin; g <= gmax; ++g)
        for (std::int64_t s = 1; s <= g + 1; ++s) out.push_back({{"g", g}, {"s", s}});
    return out;
}

std::vector<Params> one_range(const std::string& name, std::int64_t lo, std::int64_t hi)
{
    std::vector<Params> out;
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back({{name, v}});
    return out;
}

void check_gs(const Params& p)
{
    expect_names(p, {"g", "s"});
    std::int64_t g = get(p, "g"), s = get(p, "s");
    if (g < 1) throw DomainError("need g >= 1");
    if (s < 1 || s > g + 1) throw DomainError("need 1 <= s <= g+1");
}

void check_one(const Params& p, const std::string& name, std::int64_t lo, std::int64_t hi)
{
    expect_names(p, {name});
    std::int64_t v = get(p, name);
    if (v < lo || v > hi)
        throw DomainError(hi == INT64_MAX ? fmt::format("need {} >= {}", name, lo)
                                          : fmt::format("need {} <= {} <= {}", lo, name, hi));
}

constexpr std::int64_t kUnbounded = INT64_MAX;

// Right-hand products of the eight theorems.
std::string theorem_product(FormFamily f, const Params& p)
{
    switch (f) {
    case FormFamily::thm_2_1: {
        std::int64_t g = get(p, "g"), s = get(p, "s"), n = 3 * g + 1;
        return fmt::format("({},{},{};{})_inf ({},{};{})_inf / (q;q)_inf", q(-1, R(n, 4) - R(s, 2)),
                           q(-1, R(n, 4) + R(s, 2)), q(1, R(n, 2)), q(1, R(n, 2)), q(1, s), q(1, n - s), q(1, n));
    }
    case FormFamily::thm_2_3: {
        std::int64_t g = get(p, "g"), s = get(p, "s"), n = 3 * g + 2;
        return fmt::format("({},{},{};{})_inf ({},{};{})_inf / (q;q)_inf", q(-1, R(3 * g, 4) - R(s - 1, 2)),
                           q(-1, R(3 * g, 4) + R(s + 1, 2)), q(1, R(n, 2)), q(1, R(n, 2)), q(1, s), q(1, n - s),
                           q(1, n));
    }
    case FormFamily::thm_2_2: {
        std::int64_t n = 3 * get(p, "h") + 2;
        return fmt::format("({};{})_inf / (q;q)_inf", q(1, n), q(1, n));
    }
    case FormFamily::thm_2_4: {
        std::int64_t n = 3 * get(p, "h") + 1;
        return fmt::format("({};{})_inf / (q;q)_inf", q(1, n), q(1, n));
    }
    case FormFamily::thm_2_5:
    case FormFamily::thm_2_7: {
        std::int64_t g = get(p, "g"), s = get(p, "s");
        R c = f == FormFamily::thm_2_5 ? R(1, 2) : R(3, 2);
        std::int64_t n = f == FormFamily::thm_2_5 ? 4 * g + 1 : 4 * g + 3;
        return fmt::format("({},{},{},{},{},{};{})_inf / (q;q)_inf", q(-1, 2 * g - s + c), q(-1, 2 * g + c),
                           q(-1, 2 * g + s + c), q(1, s), q(1, n - s), q(1, n), q(1, n));
    }
    case FormFamily::thm_2_6: {
        std::int64_t g = get(p, "g"), n = 4 * g + 1;
        return fmt::format("({},{},{},{},{},{};{})_inf / (q;q)_inf", q(-1, R(1, 2)), q(-1, 2 * g + R(1, 2)),
                           q(-1, 4 * g + R(1, 2)), q(1, 2 * g), q(1, 2 * g + 1), q(1, n), q(1, n));
    }
    case FormFamily::thm_2_8: {
        std::int64_t g = get(p, "g"), n = 4 * g + 3;
        return fmt::format("({},{},{},{},{},{};{})_inf / (q;q)_inf", q(-1, R(1, 2)), q(-1, 2 * g + R(3, 2)),
                           q(-1, 4 * g + R(5, 2)), q(1, 2 * g + 1), q(1, 2 * g + 2), q(1, n), q(1, n));
    }
    default: throw Error("no product for family");
    }
}

int theorem_substrate(FormFamily f, const Params& p)
{
    switch (f) {
    case FormFamily::thm_2_1: return combo_substrate(3, geti(p, "g") * 3 + 1, geti(p, "s"));
    case FormFamily::thm_2_3: return combo_substrate(3, geti(p, "g") * 3 + 2, geti(p, "s"));
    case FormFamily::thm_2_2:
    case FormFamily::thm_2_4: return 1;
    default: return 2;
    }
}

const char* m37_products[4] = {
    "1 / (q^2,q^3,q^3,q^4,q^4,q^5;q^7)_inf",
    "1 / (q,q^2,q^2,q^5,q^5,q^6;q^7)_inf",
    "1 / (q,q,q^3,q^4,q^6,q^6;q^7)_inf",
    "1 / (q,q^2,q^3,q^4,q^5,q^6;q^7)_inf",
};

std::string ag_product(std::int64_t k, std::int64_t i)
{
    std::int64_t n = 2 * k + 1;
    std::string args;
    for (std::int64_t a = 1; a < n; ++a) {
        if (a == i || a == n - i) continue;
        if (!args.empty()) args += ",";
        args += q(1, a);
    }
    if (args.empty()) return "1";
    return fmt::format("1 / ({};{})_inf", args, q(1, n));
}

struct Special {
    const char* id;
    FormFamily family;
    int D;
    const char* product;
    FormFamily theorem;
    Params theorem_params;
    int subst;
    const char* statement;
};

const std::vector<Special>& specials()
{
    static const std::vector<Special> v = {
        {"euler_1", FormFamily::euler_1, 2, "(-q^(1/2);q)_inf", FormFamily::thm_2_1, {{"g", 1}, {"s", 1}}, 1,
         "Euler: sum q^(m^2/2)/(q)_m"},
        {"euler_2", FormFamily::euler_2, 1, "(-q^0;q)_inf", FormFamily::thm_2_1, {{"g", 1}, {"s", 2}}, 1,
         "Euler: sum q^(m(m-1)/2)/(q)_m"},
        {"rogers_1", FormFamily::rogers_1, 1, "(-q^3,-q^7,q^10;q^10)_inf (q^4,q^16;q^20)_inf / (q^4;q^4)_inf",
         FormFamily::thm_2_3, {{"g", 1}, {"s", 1}}, 4, "Rogers: sum q^(m^2+2m)/(q^4;q^4)_m"},
        {"rogers_2", FormFamily::rogers_2, 1, "(-q,-q^9,q^10;q^10)_inf (q^8,q^12;q^20)_inf / (q^4;q^4)_inf",
         FormFamily::thm_2_3, {{"g", 1}, {"s", 2}}, 4, "Rogers: sum q^(m^2)/(q^4;q^4)_m"},
        {"rogers_3", FormFamily::rogers_3, 1, "(-q^3,-q^5,-q^7;q^10)_inf / (q^4,q^6;q^10)_inf", FormFamily::thm_2_5,
         {{"g", 1}, {"s", 1}}, 2, "Rogers: sum q^(3m^2)/((q;q^2)_m (q^4;q^4)_m)"},
        {"rogers_4a", FormFamily::rogers_4a, 1, "(-q,-q^5,-q^9;q^10)_inf / (q^2,q^8;q^10)_inf", FormFamily::thm_2_6,
         {{"g", 1}}, 2, "Rogers: sum q^(3m^2+2m)/((q;q^2)_(m+1) (q^4;q^4)_m)"},
        {"rogers_4b", FormFamily::rogers_4b, 1, "(-q,-q^5,-q^9;q^10)_inf / (q^2,q^8;q^10)_inf", FormFamily::thm_2_5,
         {{"g", 1}, {"s", 2}}, 2, "Rogers: sum q^(3m^2-2m)/((q;q^2)_m (q^4;q^4)_m)"},
        {"selberg_1", FormFamily::selberg_1, 1, "(-q^5,-q^7,-q^9;q^14)_inf / (q^4,q^6,q^8,q^10;q^14)_inf",
         FormFamily::thm_2_7, {{"g", 1}, {"s", 1}}, 2, "Rogers-Selberg: sum q^(2m^2+2m)/((q;q^2)_m (q^4;q^4)_m)"},
        {"selberg_2", FormFamily::selberg_2, 1, "(-q^3,-q^7,-q^11;q^14)_inf / (q^2,q^6,q^8,q^12;q^14)_inf",
         FormFamily::thm_2_7, {{"g", 1}, {"s", 2}}, 2, "Rogers-Selberg: sum q^(2m^2)/((q;q^2)_m (q^4;q^4)_m)"},
        {"selberg_3", FormFamily::selberg_3, 1, "(-q,-q^7,-q^13;q^14)_inf / (q^2,q^4,q^10,q^12;q^14)_inf",
         FormFamily::thm_2_8, {{"g", 1}}, 2, "Rogers-Selberg: sum q^(2m^2+2m)/((q;q^2)_(m+1) (q^4;q^4)_m)"},
    };
    return v;
}

struct LemmaChar {
    FormFamily family;
    int p;
    bool h_family;
    std::function<std::pair<ModelLabel, FieldLabel>(const Params&)> label;
};

std::vector<LemmaChar> lemma_chars()
{
    auto gs = [](int p, int base, int r) {
        return [p, base, r](const Params& x) {
            int g = geti(x, "g");
            return std::pair{ModelLabel{p, p * g + base}, FieldLabel{r, geti(x, "s")}};
        };
    };
    auto mid = [](int base, int r) {
        return [base, r](const Params& x) {
            int g = geti(x, "g");
            return std::pair{ModelLabel{4, 4 * g + base}, FieldLabel{r, 2 * g + 1}};
        };
    };
    return {
        {FormFamily::lemma_3_1a, 3, false, gs(3, 1, 1)},
        {FormFamily::lemma_3_1b, 3, false, gs(3, 1, 2)},
        {FormFamily::lemma_3_2, 3, true,
         [](const Params& x) {
             int h = geti(x, "h");
             return std::pair{ModelLabel{3, 6 * h + 4}, FieldLabel{1, 3 * h + 2}};
         }},
        {FormFamily::lemma_3_3a, 3, false, gs(3, 2, 1)},
        {FormFamily::lemma_3_3b, 3, false, gs(3, 2, 2)},
        {FormFamily::lemma_3_4, 3, true,
         [](const Params& x) {
             int h = geti(x, "h");
             return std::pair{ModelLabel{3, 6 * h + 2}, FieldLabel{1, 3 * h + 1}};
         }},
        {FormFamily::lemma_3_5a, 4, false, gs(4, 1, 1)},
        {FormFamily::lemma_3_5b, 4, false, gs(4, 1, 3)},
        {FormFamily::lemma_3_6a, 4, false, mid(1, 1)},
        {FormFamily::lemma_3_6b, 4, false, mid(1, 3)},
        {FormFamily::lemma_3_7a, 4, false, gs(4, 3, 1)},
        {FormFamily::lemma_3_7b, 4, false, gs(4, 3, 3)},
        {FormFamily::lemma_3_8a, 4, false, mid(3, 1)},
        {FormFamily::lemma_3_8b, 4, false, mid(3, 3)},
    };
}

bool uses_s(FormFamily f)
{
    switch (f) {
    case FormFamily::lemma_3_2:
    case FormFamily::lemma_3_4:
    case FormFamily::lemma_3_6a:
    case FormFamily::lemma_3_6b:
    case FormFamily::lemma_3_8a:
    case FormFamily::lemma_3_8b: return false;
    default: return true;
    }
}

bool uses_h(FormFamily f) { return f == FormFamily::lemma_3_2 || f == FormFamily::lemma_3_4; }

std::vector<IdentityRecord> build_catalog()
{
    std::vector<IdentityRecord> out;
    auto add = [&](IdentityRecord r) { out.push_back(std::move(r)); };

    // Andrews-Gordon.
    auto ag_check = [](const Params& p) {
        expect_names(p, {"k", "i"});
        std::int64_t k = get(p, "k"), i = get(p, "i");
        if (k < 1) throw DomainError("need k >= 1");
        if (i < 1 || i > k) throw DomainError("need 1 <= i <= k");
    };
    auto ag_inst = [](const Caps& c) {
        std::vector<Params> v;
        for (std::int64_t k = 1; k <= cap(c, "k"); ++k)
            for (std::int64_t i = 1; i <= k; ++i) v.push_back({{"k", k}, {"i", i}});
        return v;
    };
    {
        IdentityRecord r;
        r.id = "ag";
        r.kind = "fermionic_vs_product";
        r.param_names = {"k", "i"};
        r.domain = "k >= 1, 1 <= i <= k";
        r.provenance = "Andrews-Gordon: chain sum equals prod over n not 0, +-i mod 2k+1 of 1/(1-q^n)";
        r.families = {FormFamily::ag};
        r.check = ag_check;
        r.substrate = [](const Params&) { return 1; };
        r.instances = ag_inst;
        r.lhs = form_side(FormFamily::ag);
        r.rhs = text_side([](const Params& p) { return ag_product(get(p, "k"), get(p, "i")); });
        add(r);

        r.id = "ag_bosonic";
        r.kind = "fermionic_vs_bosonic";
        r.provenance = "Andrews-Gordon chain sum equals the M(2,2k+1) character chi_{1,i}";
        r.instances = [ag_inst](const Caps& c) {
            auto v = ag_inst(c);
            std::erase_if(v, [](const Params& p) { return get(p, "k") < 2; });
            return v;
        };
        r.check = [ag_check](const Params& p) {
            ag_check(p);
            if (get(p, "k") < 2) throw DomainError("need k >= 2 for a minimal model");
        };
        r.rhs = bosonic_side([](const Params& p) {
            return std::pair{ModelLabel{2, geti(p, "k") * 2 + 1}, FieldLabel{1, geti(p, "i")}};
        });
        add(r);
    }

    // Theorems against their products.
    struct Thm {
        FormFamily f;
        const char* kind; // "gs", "g", "h"
        const char* domain;
        const char* text;
    };
    const std::vector<Thm> thms = {
        {FormFamily::thm_2_1, "gs", "g >= 1, 1 <= s <= g+1", "chi^{3,3g+1}_{1,s} + q^((3g+1)/4-s/2) chi^{3,3g+1}_{2,s}"},
        {FormFamily::thm_2_2, "h", "h >= 1", "chi^{3,6h+4}_{1,3h+2}"},
        {FormFamily::thm_2_3, "gs", "g >= 1, 1 <= s <= g+1", "chi^{3,3g+2}_{1,s} + q^((3g+2)/4-s/2) chi^{3,3g+2}_{2,s}"},
        {FormFamily::thm_2_4, "h", "h >= 1", "chi^{3,6h+2}_{1,3h+1}"},
        {FormFamily::thm_2_5, "gs", "g >= 1, 1 <= s <= g+1", "chi^{4,4g+1}_{1,s} + q^(2g+1/2-s) chi^{4,4g+1}_{3,s}"},
        {FormFamily::thm_2_6, "g", "g >= 1", "chi^{4,4g+1}_{1,2g} + q^(1/2) chi^{4,4g+1}_{3,2g}"},
        {FormFamily::thm_2_7, "gs", "g >= 1, 1 <= s <= g+1", "chi^{4,4g+3}_{1,s} + q^(2g+3/2-s) chi^{4,4g+3}_{3,s}"},
        {FormFamily::thm_2_8, "g", "g >= 1", "chi^{4,4g+3}_{1,2g+1} + q^(1/2) chi^{4,4g+3}_{3,2g+1}"},
    };
    for (const auto& t : thms) {
        IdentityRecord r;
        r.id = family_name(t.f);
        r.kind = "fermionic_vs_product";
        std::string k = t.kind;
        r.param_names = k == "gs" ? std::vector<std::string>{"g", "s"}
                                  : std::vector<std::string>{k};
        r.domain = t.domain;
        r.provenance = std::string("fermionic sum for ") + t.text + " equals its product form";
        r.families = {t.f};
        r.check = [k](const Params& p) {
            if (k == "gs")
                check_gs(p);
            else
                check_one(p, k, 1, kUnbounded);
        };
        FormFamily f = t.f;
        r.substrate = [f](const Params& p) { return theorem_substrate(f, p); };
        r.instances = [k](const Caps& c) {
            if (k == "gs") return gs_range(cap(c, "g"));
            return one_range(k, 1, cap(c, k == "h" ? "h" : "g"));
        };
        r.lhs = form_side(f);
        r.rhs = text_side([f](const Params& p) { return theorem_product(f, p); });
        add(r);
    }

    // M(3,7)_3 and its alternative forms.
    for (int k = 1; k <= 4; ++k) {
        IdentityRecord r;
        r.id = fmt::format("m37_{}", k);
        r.kind = "fermionic_vs_product";
        r.domain = "no parameters";
        r.provenance = fmt::format("M(3,7)_3 character sum number {} equals its product", k);
        r.families = {FormFamily::m37};
        r.check = [](const Params& p) { expect_names(p, {}); };
        r.substrate = [](const Params&) { return 1; };
        r.instances = none;
        r.lhs = form_side(FormFamily::m37, [k](const Params&) { return Params{{"k", k}}; });
        std::string prod = m37_products[k - 1];
        r.rhs = text_side([prod](const Params&) { return prod; });
        add(r);
    }
    for (int k = 1; k <= 5; ++k) {
        IdentityRecord r;
        r.id = k == 5 ? "asw_4b" : fmt::format("asw_{}", k);
        r.kind = "fermionic_vs_product";
        r.domain = "no parameters";
        r.provenance = k == 5 ? "second Gaussian-sum form of the fourth M(3,7)_3 product"
                              : fmt::format("Gaussian-sum form number {} of the M(3,7)_3 products", k);
        r.conjectural = k == 2;
        r.families = {FormFamily::asw};
        r.check = [](const Params& p) { expect_names(p, {}); };
        r.substrate = [](const Params&) { return 1; };
        r.instances = none;
        r.lhs = form_side(FormFamily::asw, [k](const Params&) { return Params{{"k", k}}; });
        std::string prod = m37_products[std::min(k, 4) - 1];
        r.rhs = text_side([prod](const Params&) { return prod; });
        add(r);
    }
    {
        IdentityRecord r;
        r.id = "m37_asw";
        r.kind = "fermionic_vs_fermionic";
        r.param_names = {"k"};
        r.domain = "1 <= k <= 5 (5 pairs the second Gaussian form with the fourth sum)";
        r.provenance = "each M(3,7)_3 chain sum equals the matching Gaussian-sum form";
        r.families = {FormFamily::m37, FormFamily::asw};
        r.check = [](const Params& p) { check_one(p, "k", 1, 5); };
        r.substrate = [](const Params&) { return 1; };
        r.instances = [](const Caps&) { return one_range("k", 1, 5); };
        r.lhs = form_side(FormFamily::m37, [](const Params& p) { return Params{{"k", std::min<std::int64_t>(get(p, "k"), 4)}}; });
        r.rhs = form_side(FormFamily::asw);
        add(r);

        r.id = "m37_bosonic";
        r.kind = "fermionic_vs_bosonic";
        r.domain = "1 <= k <= 4";
        r.provenance = "M(3,7)_3 sum k equals chi^{3,14}_{1,2k-1} + q^(7/2-(2k-1)/2) chi^{3,14}_{2,2k-1}";
        r.families = {FormFamily::m37};
        r.check = [](const Params& p) { check_one(p, "k", 1, 4); };
        r.instances = [](const Caps&) { return one_range("k", 1, 4); };
        r.lhs = form_side(FormFamily::m37);
        r.rhs = [](const Params& p, int D, std::int64_t T, const BuildContext&) {
            int k = geti(p, "k");
            if (k == 4) return to_order(bosonic({3, 14}, {1, 7}, T / D + 1).refined(D), T);
            return bosonic_combo(3, 14, 2 * k - 1, 1, D, T);
        };
        add(r);

        r.id = "m37_thm";
        r.kind = "fermionic_vs_fermionic";
        r.provenance = "M(3,7)_3 sum k equals the M(3,14) theorem form (g=4, s=2k-1; h=2 for k=4)";
        r.families = {FormFamily::m37, FormFamily::thm_2_3, FormFamily::thm_2_4};
        r.rhs = [](const Params& p, int D, std::int64_t T, const BuildContext& ctx) {
            std::int64_t k = get(p, "k");
            if (k == 4) return eval_form(ctx.form(FormFamily::thm_2_4, {{"h", 2}}), D, T);
            return eval_form(ctx.form(FormFamily::thm_2_3, {{"g", 4}, {"s", 2 * k - 1}}), D, T);
        };
        add(r);
    }

    // Single-sum specialisations.
    for (const auto& sp : specials()) {
        IdentityRecord r;
        r.id = sp.id;
        r.kind = "fermionic_vs_product";
        r.domain = "no parameters";
        r.provenance = sp.statement;
        r.families = {sp.family};
        r.check = [](const Params& p) { expect_names(p, {}); };
        int D = sp.D;
        r.substrate = [D](const Params&) { return D; };
        r.instances = none;
        r.lhs = form_side(sp.family);
        std::string prod = sp.product;
        r.rhs = text_side([prod](const Params&) { return prod; });
        add(r);

        r.id = std::string(sp.id) + "_subst";
        r.kind = "fermionic_vs_fermionic";
        r.provenance = fmt::format("{} is the g=1 instance of {} under q -> q^{}", sp.id, family_name(sp.theorem),
                                   sp.subst);
        r.families = {sp.family, sp.theorem};
        r.rhs = [sp](const Params&, int D, std::int64_t T, const BuildContext& ctx) {
            int td = theorem_substrate(sp.theorem, sp.theorem_params);
            std::int64_t q_order = T / D / sp.subst + 1;
            QSeries s = eval_form(ctx.form(sp.theorem, sp.theorem_params), td, q_order * td + td - 1);
            return to_order(on_denom(s.substituted(sp.subst), D), T);
        };
        add(r);
    }

    // Bosonic sums against the four pure products.
    {
        IdentityRecord r;
        r.id = "product_char";
        r.kind = "bosonic_vs_product";
        r.param_names = {"p", "pp", "r", "s", "case"};
        r.domain = "coprime 2 <= p < pp, 1 <= r < p, 1 <= s < pp; case 1: p=2r, 2: pp=2s, 3: p=3r, 4: pp=3s";
        r.provenance = "bosonic character equals its product form when p=2r, p'=2s, p=3r or p'=3s";
        auto label = [](const Params& p) {
            return std::tuple{ModelLabel{geti(p, "p"), geti(p, "pp")}, FieldLabel{geti(p, "r"), geti(p, "s")},
                              static_cast<ProductCase>(geti(p, "case") - 1)};
        };
        r.check = [label](const Params& p) {
            expect_names(p, {"p", "pp", "r", "s", "case"});
            std::int64_t c = get(p, "case");
            if (c < 1 || c > 4) throw DomainError("need 1 <= case <= 4");
            auto [m, f, pc] = label(p);
            check_field(m, f);
            if (!product_case_holds(pc, m, f)) throw DomainError("product case does not hold for these labels");
        };
        r.substrate = [](const Params&) { return 1; };
        r.instances = [](const Caps& c) {
            std::vector<Params> v;
            std::int64_t pq = cap(c, "pq");
            for (int p = 2; p * (p + 1) <= pq; ++p)
                for (int pp = p + 1; p * pp <= pq; ++pp) {
                    if (std::gcd(p, pp) != 1) continue;
                    for (int rr = 1; rr < p; ++rr)
                        for (int s = 1; s < pp; ++s)
                            for (int cs = 1; cs <= 4; ++cs)
                                if (product_case_holds(static_cast<ProductCase>(cs - 1), {p, pp}, {rr, s}))
                                    v.push_back({{"p", p}, {"pp", pp}, {"r", rr}, {"s", s}, {"case", cs}});
                }
            return v;
        };
        r.lhs = [label](const Params& p, int, std::int64_t T, const BuildContext&) {
            auto [m, f, pc] = label(p);
            return bosonic(m, f, T);
        };
        r.rhs = [label](const Params& p, int, std::int64_t T, const BuildContext&) {
            auto [m, f, pc] = label(p);
            return product_char(pc, m, f, T);
        };
        add(r);
    }

    // Character combinations: the two product forms, and the bosonic sum.
    {
        auto combo_params = [](const Params& p) {
            return std::tuple{geti(p, "p"), geti(p, "pp"), geti(p, "s"), geti(p, "sign")};
        };
        auto base_check = [combo_params](const Params& p) {
            expect_names(p, {"p", "pp", "s", "sign"});
            auto [pv, pp, s, sign] = combo_params(p);
            check_combo(pv, pp, s, sign);
            // chi_{1,s} - chi_{2,s} vanishes identically there.
            if (pv == 3 && pp == 2 * s && sign < 0) throw DomainError("p = 3, p' = 2s with sign -1 is identically zero");
        };
        auto inst = [](bool need_alt) {
            return [need_alt](const Caps& c) {
                std::vector<Params> v;
                for (int p : {3, 4})
                    for (int pp = p + 1; pp <= cap(c, "pp"); ++pp) {
                        if (std::gcd(p, pp) != 1) continue;
                        for (int s = 1; s < pp; ++s) {
                            if (need_alt && p == 3 && pp == 2 * s) continue;
                            for (int sign : {1, -1}) {
                                if (p == 3 && pp == 2 * s && sign < 0) continue;
                                v.push_back({{"p", p}, {"pp", pp}, {"s", s}, {"sign", sign}});
                            }
                        }
                    }
                return v;
            };
        };
        IdentityRecord r;
        r.id = "combo_forms";
        r.kind = "product_vs_product";
        r.param_names = {"p", "pp", "s", "sign"};
        r.domain = "p in {3,4}, p' coprime to p, 1 <= s < p', sign = +-1; p' != 2s when p = 3";
        r.provenance = "the two product forms of chi_{1,s} +- q^shift chi_{p-1,s} agree";
        r.check = [base_check, combo_params](const Params& p) {
            base_check(p);
            auto [pv, pp, s, sign] = combo_params(p);
            if (pv == 3 && pp == 2 * s) throw DomainError("the alternative p = 3 form needs p' != 2s");
        };
        r.substrate = [combo_params](const Params& p) {
            auto [pv, pp, s, sign] = combo_params(p);
            return combo_substrate(pv, pp, s);
        };
        r.instances = inst(true);
        r.lhs = [combo_params](const Params& p, int D, std::int64_t T, const BuildContext&) {
            auto [pv, pp, s, sign] = combo_params(p);
            return combo_product(pv, pp, s, sign, ComboForm::primary, D, T);
        };
        r.rhs = [combo_params](const Params& p, int D, std::int64_t T, const BuildContext&) {
            auto [pv, pp, s, sign] = combo_params(p);
            return combo_product(pv, pp, s, sign, ComboForm::alternative, D, T);
        };
        add(r);

        r.id = "combo_bosonic";
        r.kind = "bosonic_vs_product";
        r.domain = "p in {3,4}, p' coprime to p, 1 <= s < p', sign = +-1; not p = 3, p' = 2s, sign -1";
        r.provenance = "chi_{1,s} +- q^shift chi_{p-1,s} from bosonic sums equals its product form";
        r.check = base_check;
        r.instances = inst(false);
        r.rhs = [combo_params](const Params& p, int D, std::int64_t T, const BuildContext&) {
            auto [pv, pp, s, sign] = combo_params(p);
            return bosonic_combo(pv, pp, s, sign, D, T);
        };
        add(r);
    }

    // Lemma forms against single characters.
    for (const auto& lc : lemma_chars()) {
        IdentityRecord r;
        r.id = family_name(lc.family) + "_char";
        r.kind = "fermionic_vs_bosonic";
        bool h = uses_h(lc.family), s = uses_s(lc.family);
        r.param_names = h ? std::vector<std::string>{"h"} : s ? std::vector<std::string>{"g", "s"}
                                                              : std::vector<std::string>{"g"};
        r.domain = h ? "h >= 1" : s ? "g >= 1, 1 <= s <= g+1" : "g >= 1";
        auto [m0, f0] = lc.label(h ? Params{{"h", 1}} : Params{{"g", 1}, {"s", 1}});
        r.provenance = fmt::format("lemma form equals chi^{{{},p'}}_{{{},s}}", m0.p, f0.r);
        r.families = {lc.family};
        r.check = [h, s](const Params& p) {
            if (h)
                check_one(p, "h", 1, kUnbounded);
            else if (s)
                check_gs(p);
            else
                check_one(p, "g", 1, kUnbounded);
        };
        r.substrate = [](const Params&) { return 1; };
        r.instances = [h, s](const Caps& c) {
            if (h) return one_range("h", 1, cap(c, "h"));
            return s ? gs_range(cap(c, "g")) : one_range("g", 1, cap(c, "g"));
        };
        r.lhs = form_side(lc.family);
        r.rhs = bosonic_side(lc.label);
        add(r);
    }

    // Parity-split sums recombine into the theorem forms.
    struct Split {
        const char* id;
        FormFamily a, b, thm;
        std::function<Rational(const Params&)> shift; // empty: lemma a alone
        const char* what;
    };
    const std::vector<Split> splits = {
        {"lemma_3_1_split", FormFamily::lemma_3_1a, FormFamily::lemma_3_1b, FormFamily::thm_2_1,
         [](const Params& p) { return combo_shift(3, 3 * geti(p, "g") + 1, geti(p, "s")); },
         "even-m and odd-m lemma sums recombine into the theorem form"},
        {"lemma_3_2_split", FormFamily::lemma_3_2, FormFamily::lemma_3_2, FormFamily::thm_2_2, {},
         "free-coordinate lemma sum equals the chain form"},
        {"lemma_3_3_split", FormFamily::lemma_3_3a, FormFamily::lemma_3_3b, FormFamily::thm_2_3,
         [](const Params& p) { return combo_shift(3, 3 * geti(p, "g") + 2, geti(p, "s")); },
         "even-m and odd-m lemma sums recombine into the theorem form"},
        {"lemma_3_4_split", FormFamily::lemma_3_4, FormFamily::lemma_3_4, FormFamily::thm_2_4, {},
         "free-coordinate lemma sum equals the chain form"},
        {"lemma_3_5_split", FormFamily::lemma_3_5a, FormFamily::lemma_3_5b, FormFamily::thm_2_5,
         [](const Params& p) { return combo_shift(4, 4 * geti(p, "g") + 1, geti(p, "s")); },
         "summing the Gaussian variable reproduces the (q^(1/2);q)_M (q^2;q^2)_M form"},
        {"lemma_3_6_split", FormFamily::lemma_3_6b, FormFamily::lemma_3_6a, FormFamily::thm_2_6,
         [](const Params&) { return R(1, 2); },
         "summing the Gaussian variable reproduces the (q^(1/2);q)_(M+1) (q^2;q^2)_M form"},
        {"lemma_3_7_split", FormFamily::lemma_3_7a, FormFamily::lemma_3_7b, FormFamily::thm_2_7,
         [](const Params& p) { return combo_shift(4, 4 * geti(p, "g") + 3, geti(p, "s")); },
         "summing the Gaussian variable reproduces the (q^(1/2);q)_M (q^2;q^2)_M form"},
        {"lemma_3_8_split", FormFamily::lemma_3_8a, FormFamily::lemma_3_8b, FormFamily::thm_2_8,
         [](const Params&) { return R(1, 2); },
         "summing the Gaussian variable reproduces the (q^(1/2);q)_(M+1) (q^2;q^2)_M form"},
    };
    for (const auto& sp : splits) {
        IdentityRecord r;
        r.id = sp.id;
        r.kind = sp.shift ? "split_vs_theorem" : "coordinates_vs_theorem";
        bool h = uses_h(sp.a), s = uses_s(sp.a);
        r.param_names = h ? std::vector<std::string>{"h"} : s ? std::vector<std::string>{"g", "s"}
                                                              : std::vector<std::string>{"g"};
        r.domain = h ? "h >= 1" : s ? "g >= 1, 1 <= s <= g+1" : "g >= 1";
        r.provenance = sp.what;
        r.families = {sp.a, sp.thm};
        if (sp.b != sp.a) r.families.push_back(sp.b);
        r.check = [h, s](const Params& p) {
            if (h)
                check_one(p, "h", 1, kUnbounded);
            else if (s)
                check_gs(p);
            else
                check_one(p, "g", 1, kUnbounded);
        };
        FormFamily thm = sp.thm;
        r.substrate = [thm](const Params& p) { return theorem_substrate(thm, p); };
        r.instances = [h, s](const Caps& c) {
            if (h) return one_range("h", 1, cap(c, "h"));
            return s ? gs_range(cap(c, "g")) : one_range("g", 1, cap(c, "g"));
        };
        r.lhs = sp.shift ? split_side(sp.a, sp.b, sp.shift) : form_side(sp.a);
        r.rhs = form_side(sp.thm);
        add(r);
    }

    // Exact prefactor cancellations, asserted without series work.
    struct Pref {
        const char* id;
        FormFamily b;
        int p;
        int base;
        bool middle; // s = 2g+1 form: pref(other) = pref(b) + 1/2
        FormFamily other;
    };
    const std::vector<Pref> prefs = {
        {"lemma_3_1_prefactor", FormFamily::lemma_3_1b, 3, 1, false, FormFamily::lemma_3_1a},
        {"lemma_3_3_prefactor", FormFamily::lemma_3_3b, 3, 2, false, FormFamily::lemma_3_3a},
        {"lemma_3_5_prefactor", FormFamily::lemma_3_5b, 4, 1, false, FormFamily::lemma_3_5a},
        {"lemma_3_6_prefactor", FormFamily::lemma_3_6a, 4, 1, true, FormFamily::lemma_3_6b},
        {"lemma_3_7_prefactor", FormFamily::lemma_3_7b, 4, 3, false, FormFamily::lemma_3_7a},
        {"lemma_3_8_prefactor", FormFamily::lemma_3_8b, 4, 3, true, FormFamily::lemma_3_8a},
    };
    for (const auto& pf : prefs) {
        IdentityRecord r;
        r.id = pf.id;
        r.kind = "prefactor_cancellation";
        r.param_names = pf.middle ? std::vector<std::string>{"g"} : std::vector<std::string>{"g", "s"};
        r.domain = pf.middle ? "g >= 1" : "g >= 1, 1 <= s <= g+1";
        r.provenance = pf.middle ? "the two lemma prefactors differ by the combination shift 1/2"
                                 : "lemma-b prefactor plus the combination shift is zero";
        r.families = {pf.b, pf.other};
        bool middle = pf.middle;
        r.check = [middle](const Params& p) {
            if (middle)
                check_one(p, "g", 1, kUnbounded);
            else
                check_gs(p);
        };
        r.substrate = [](const Params&) { return 1; };
        r.instances = [middle](const Caps& c) { return middle ? one_range("g", 1, cap(c, "g")) : gs_range(cap(c, "g")); };
        r.scalar_lhs = [pf](const Params& p, const BuildContext& ctx) {
            Rational pref = ctx.form(pf.b, p).constant;
            int g = geti(p, "g");
            int pp = pf.p * g + pf.base;
            int s = pf.middle ? (pf.p == 4 && pf.base == 1 ? 2 * g : 2 * g + 1) : geti(p, "s");
            return pref + combo_shift(pf.p, pp, s);
        };
        r.scalar_rhs = [pf](const Params& p, const BuildContext& ctx) {
            return pf.middle ? ctx.form(pf.other, p).constant : Rational(0);
        };
        add(r);
    }

    // q-binomial sums, compared as exact polynomials.
    for (auto variant : {QBinomialVariant::plain, QBinomialVariant::shifted}) {
        IdentityRecord r;
        bool plain = variant == QBinomialVariant::plain;
        r.id = plain ? "qbinomial_plain" : "qbinomial_shifted";
        r.kind = "polynomial_identity";
        r.param_names = {"P"};
        r.domain = "P >= 0";
        r.provenance = plain ? "sum_k q^(k^2/2) [P,k] = (-q^(1/2);q)_P"
                             : "sum_k q^(k^2/2-Pk) [P,k] = q^(-P^2/2) (-q^(1/2);q)_P";
        r.check = [](const Params& p) { check_one(p, "P", 0, 200); };
        r.substrate = [](const Params&) { return 2; };
        r.instances = [](const Caps& c) { return one_range("P", 0, cap(c, "P")); };
        auto side = [variant](bool left) {
            return [variant, left](const Params& p, int, std::int64_t T, const BuildContext&) {
                QBinomialSides s = qbinomial_sum(get(p, "P"), variant);
                QSeries x = left ? s.lhs : s.rhs;
                return x.order() < T ? x.extended(T) : x;
            };
        };
        r.lhs = side(true);
        r.rhs = side(false);
        add(r);
    }

    // Scalars.
    {
        IdentityRecord r;
        r.id = "central_charge";
        r.kind = "rational_identity";
        r.domain = "no parameters";
        r.provenance = "M(3,7)_3 and M(3,14) share a central charge";
        r.check = [](const Params& p) { expect_names(p, {}); };
        r.substrate = [](const Params&) { return 1; };
        r.instances = none;
        r.scalar_lhs = [](const Params&, const BuildContext&) { return central_charge(3, 3, 7); };
        r.scalar_rhs = [](const Params&, const BuildContext&) { return central_charge(2, 3, 14); };
        add(r);

        r.id = "central_charge_value";
        r.provenance = "the central charge of M(3,14) is -114/7";
        r.scalar_lhs = [](const Params&, const BuildContext&) { return central_charge(2, 3, 14); };
        r.scalar_rhs = [](const Params&, const BuildContext&) { return R(-114, 7); };
        add(r);

        r.id = "bmatrix";
        r.kind = "quadratic_form_identity";
        r.param_names = {"g"};
        r.domain = "g >= 2";
        r.provenance = "sum_j N_j^2 = n^T B n with B_jl = min(j,l) on random samples";
        r.check = [](const Params& p) { check_one(p, "g", 2, 64); };
        r.instances = [](const Caps& c) { return one_range("g", 2, cap(c, "g")); };
        r.scalar_lhs = [](const Params& p, const BuildContext&) { return R(bmatrix_check(geti(p, "g")) ? 1 : 0); };
        r.scalar_rhs = [](const Params&, const BuildContext&) { return R(1); };
        add(r);
    }
    return out;
}

} // namespace

Caps default_caps() { return {{"g", 5}, {"h", 4}, {"k", 5}, {"P", 30}, {"pq", 100}, {"pp", 20}}; }

FermionicFormSpec BuildContext::form(FormFamily family, const Params& params) const
{
    FermionicFormSpec f = build_form(family, params);
    if (mutation_ && mutation_->family == family) {
        const auto& m = *mutation_;
        if (m.i < f.num_vars() && m.j < f.num_vars()) {
            f.quad[m.i][m.j] += m.delta;
            if (m.i != m.j) f.quad[m.j][m.i] += m.delta;
        }
    }
    return f;
}

const std::vector<IdentityRecord>& catalog()
{
    static const std::vector<IdentityRecord> c = build_catalog();
    return c;
}

const IdentityRecord* find_record(const std::string& id)
{
    for (const auto& r : catalog())
        if (r.id == id) return &r;
    return nullptr;
}

} // namespace qsid
