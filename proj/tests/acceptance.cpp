// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "qsid/characters.hpp"
#include "qsid/verify.hpp"
#include "test_util.hpp"

using namespace qsid;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Tally {
    std::size_t runs = 0;
    std::vector<std::string> bad;

    void add(const VerificationReport& r, bool extra_ok = true, const std::string& why = "")
    {
        ++runs;
        if (r.status != Status::verified)
            bad.push_back(fmt::format("{}({}) {} {}", r.id, params_text(r.params), status_name(r.status), r.message));
        else if (!extra_ok)
            bad.push_back(fmt::format("{}({}) {}", r.id, params_text(r.params), why));
    }
    void fail(const std::string& what)
    {
        ++runs;
        bad.push_back(what);
    }
    Outcome outcome(const std::string& extra = "") const
    {
        Outcome o;
        o.pass = bad.empty() && runs > 0;
        o.detail = fmt::format("{} checks", runs);
        if (!extra.empty()) o.detail += ", " + extra;
        for (std::size_t i = 0; i < bad.size() && i < 5; ++i) o.detail += "; " + bad[i];
        if (bad.size() > 5) o.detail += fmt::format("; ... {} more", bad.size() - 5);
        return o;
    }
};

std::vector<VerificationReport> suite_for(const std::set<std::string>& ids, std::int64_t order, Caps caps = default_caps())
{
    return run_suite(order, caps, {}, 0, [&](const IdentityRecord& r) { return ids.count(r.id) > 0; });
}

std::vector<long> head(const QSeries& s, int n) { return test::window(s, 0, n - 1); }

Outcome ac1()
{
    auto start = std::chrono::steady_clock::now();
    Caps caps = default_caps();
    caps["g"] = 5;
    auto reps = suite_for({"thm_2_1", "thm_2_3"}, 40, caps);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Tally t;
    std::set<std::pair<std::string, std::pair<std::int64_t, std::int64_t>>> seen;
    for (const auto& r : reps) {
        std::int64_t g = r.params.at("g"), s = r.params.at("s");
        int pp = static_cast<int>(r.id == "thm_2_1" ? 3 * g + 1 : 3 * g + 2);
        int want = combo_substrate(3, pp, static_cast<int>(s));
        t.add(r, r.D == want, fmt::format("D={} expected {}", r.D, want));
        seen.insert({r.id, {g, s}});
    }
    for (const char* id : {"thm_2_1", "thm_2_3"})
        for (std::int64_t g = 1; g <= 5; ++g)
            for (std::int64_t s = 1; s <= g + 1; ++s)
                if (!seen.count({id, {g, s}})) t.fail(fmt::format("{} g={} s={} not in suite", id, g, s));
    if (secs >= 300) t.fail(fmt::format("took {:.1f} s", secs));
    return t.outcome(fmt::format("{:.2f} s", secs));
}

Outcome ac2()
{
    Tally t;
    std::set<std::int64_t> hs;
    for (const auto& r : suite_for({"thm_2_2", "thm_2_4"}, 40)) {
        t.add(r, r.D == 1, "D != 1");
        hs.insert(r.params.at("h"));
    }
    if (hs != std::set<std::int64_t>{1, 2, 3, 4}) t.fail("h range is not 1..4");
    const IdentityRecord* rec = find_record("thm_2_2");
    Params p{{"h", 1}};
    auto rhs = head(rec->rhs(p, 1, 5, {}), 6);
    auto lhs = head(rec->lhs(p, 1, 5, {}), 6);
    if (rhs != std::vector<long>{1, 1, 2, 3, 5, 6}) t.fail("h=1 product side does not start 1,1,2,3,5,6");
    if (lhs != rhs) t.fail("h=1 fermionic side differs");
    return t.outcome();
}

Outcome ac3()
{
    Tally t;
    Caps caps = default_caps();
    caps["g"] = 4;
    for (const auto& r : suite_for({"thm_2_5", "thm_2_6", "thm_2_7", "thm_2_8"}, 40, caps))
        t.add(r, r.D == 2, "D != 2");
    return t.outcome();
}

Outcome ac4()
{
    Tally t;
    for (const char* id : {"m37_1", "m37_2", "m37_3", "m37_4"}) t.add(verify(id, {}, 100));
    const IdentityRecord* rec = find_record("m37_1");
    std::vector<long> want{1, 0, 1, 2, 3, 3};
    if (head(rec->lhs({}, 1, 5, {}), 6) != want) t.fail("m37_1 sum side does not start 1,0,1,2,3,3");
    if (head(rec->rhs({}, 1, 5, {}), 6) != want) t.fail("m37_1 product side does not start 1,0,1,2,3,3");
    return t.outcome();
}

Outcome ac5()
{
    Tally t;
    for (const char* id : {"asw_1", "asw_2", "asw_3", "asw_4", "asw_4b"}) {
        auto r = verify(id, {}, 100);
        bool want_conj = std::string(id) == "asw_2";
        t.add(r, r.conjectural == want_conj, "conjectural flag wrong");
    }
    for (std::int64_t k = 1; k <= 5; ++k) t.add(verify("m37_asw", {{"k", k}}, 100));
    return t.outcome();
}

Outcome ac6()
{
    Tally t;
    for (const char* id : {"rogers_1", "rogers_2"}) {
        auto r = verify(id, {}, 200);
        t.add(r, r.D == 1, "not an integer-exponent form");
    }
    for (const char* id : {"euler_1", "euler_2", "rogers_3", "rogers_4a", "rogers_4b", "selberg_1", "selberg_2",
                           "selberg_3"})
        t.add(verify(id, {}, 100));
    for (const char* id : {"euler_1", "euler_2", "rogers_1", "rogers_2", "rogers_3", "rogers_4a", "rogers_4b",
                           "selberg_1", "selberg_2", "selberg_3"})
        t.add(verify(std::string(id) + "_subst", {}, 100));
    return t.outcome();
}

Outcome ac7()
{
    Tally t;
    std::set<std::int64_t> cases;
    auto reps = suite_for({"product_char"}, 60);
    for (const auto& r : reps) {
        t.add(r, r.params.at("p") * r.params.at("pp") <= 100, "p p' above 100");
        cases.insert(r.params.at("case"));
    }
    if (cases.size() != 4) t.fail("not every product case occurs");
    // Coverage: every admissible field must be in the suite.
    std::size_t expected = 0;
    for (int p = 2; p <= 10; ++p)
        for (int pp = p + 1; p * pp <= 100; ++pp) {
            if (std::gcd(p, pp) != 1) continue;
            for (int r = 1; r < p; ++r)
                for (int s = 1; s < pp; ++s)
                    for (ProductCase c : {ProductCase::p_is_2r, ProductCase::pp_is_2s, ProductCase::p_is_3r,
                                          ProductCase::pp_is_3s})
                        expected += product_case_holds(c, {p, pp}, {r, s});
        }
    if (reps.size() != expected) t.fail(fmt::format("suite has {} instances, expected {}", reps.size(), expected));
    return t.outcome();
}

Outcome ac8()
{
    Tally t;
    std::set<std::int64_t> signs, ps;
    for (const auto& r : suite_for({"combo_forms", "combo_bosonic"}, 60)) {
        t.add(r, r.params.at("pp") <= 20, "p' above 20");
        signs.insert(r.params.at("sign"));
        ps.insert(r.params.at("p"));
    }
    if (signs.size() != 2) t.fail("both signs must occur");
    if (ps != std::set<std::int64_t>{3, 4}) t.fail("both p = 3 and p = 4 must occur");
    return t.outcome();
}

Outcome ac9()
{
    Tally t;
    std::set<std::string> ids;
    for (const auto& r : catalog())
        if (r.id.rfind("lemma_", 0) == 0) ids.insert(r.id);
    Caps caps = default_caps();
    caps["g"] = 4;
    caps["h"] = 3;
    std::set<std::string> kinds;
    for (const auto& r : suite_for(ids, 40, caps)) {
        t.add(r);
        kinds.insert(r.id.substr(r.id.rfind('_') + 1));
    }
    if (kinds != std::set<std::string>{"char", "split", "prefactor"}) t.fail("a lemma check kind is missing");
    return t.outcome(fmt::format("{} lemma records", ids.size()));
}

Outcome ac10()
{
    Tally t;
    std::set<std::int64_t> Ps;
    for (const auto& r : suite_for({"qbinomial_plain", "qbinomial_shifted"}, 40)) {
        t.add(r);
        Ps.insert(r.params.at("P"));
    }
    if (Ps.size() != 31) t.fail("P does not cover 0..30");
    t.add(verify("central_charge", {}, 1));
    t.add(verify("central_charge_value", {}, 1));
    Rational a = central_charge(3, 3, 7), b = central_charge(2, 3, 14);
    if (!(a == b && a == Rational(-114, 7))) t.fail("central charges are not -114/7");
    return t.outcome();
}

Outcome ac11()
{
    Tally t;
    QSeries p = eval_product(parse_product("1 / (q;q)_inf"), 1, 60);
    for (int n = 0; n <= 60; ++n) {
        ++t.runs;
        if (p.coeff_at(n) != partition_count(n)) t.fail(fmt::format("p({}) mismatch", n));
    }
    if (p.coeff_at(10) != 42 || p.coeff_at(5) != 7) t.fail("p(10) or p(5) wrong");

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> off(-3, 3), len(0, 25), den(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        int D = den(rng);
        auto mk = [&] {
            std::int64_t o = off(rng);
            return test::random_series(rng, D, o, o + len(rng));
        };
        QSeries a = mk(), b = mk(), c = mk();
        auto same = [](const QSeries& x, const QSeries& y) { return !first_mismatch(x, y).has_value(); };
        ++t.runs;
        if (!(a + b == b + a && (a + b) + c == a + (b + c) && a * b == b * a && same((a * b) * c, a * (b * c)) &&
              same(a * (b + c), a * b + a * c) && (a + (-a)).is_zero()))
            t.fail(fmt::format("ring axiom trial {}", trial));

        QSeries x = test::random_series(rng, D, 0, 1 + len(rng)), y = test::random_series(rng, D, 0, 1 + len(rng));
        std::int64_t k = std::min(x.order(), y.order()) / 2;
        ++t.runs;
        if (!((x * y).truncated(k) == x.truncated(k) * y.truncated(k) &&
              (x + y).truncated(k) == x.truncated(k) + y.truncated(k)))
            t.fail(fmt::format("truncation trial {}", trial));
    }
    return t.outcome();
}

// Every quadratic entry of every builder, one at a time.
Outcome ac12()
{
    Caps caps{{"g", 3}, {"h", 2}, {"k", 5}, {"P", 2}, {"pq", 10}, {"pp", 5}};
    const std::int64_t order = 30;
    std::size_t mutations = 0;
    std::vector<std::string> survivors;
    for (FormFamily fam : all_families()) {
        std::vector<const IdentityRecord*> recs;
        for (const auto& r : catalog())
            if (std::find(r.families.begin(), r.families.end(), fam) != r.families.end()) recs.push_back(&r);
        // Largest form among the capped instances whose parameters fit the builder.
        std::size_t nv = build_form(fam, sample_params(fam)).num_vars();
        for (const auto* r : recs)
            for (const auto& p : r->instances(caps)) {
                try {
                    nv = std::max(nv, build_form(fam, p).num_vars());
                } catch (const Error&) {
                }
            }
        if (recs.empty()) {
            survivors.push_back(family_name(fam) + " (no record)");
            continue;
        }
        for (std::size_t i = 0; i < nv; ++i)
            for (std::size_t j = i; j < nv; ++j) {
                ++mutations;
                BuildContext ctx(Mutation{fam, i, j, Rational(1)});
                auto reps = run_suite(order, caps, ctx, 0, [&](const IdentityRecord& r) {
                    return std::find(recs.begin(), recs.end(), &r) != recs.end();
                });
                bool caught = std::any_of(reps.begin(), reps.end(), [](const VerificationReport& r) {
                    return r.status == Status::discrepancy && r.first_discrepancy.has_value();
                });
                if (!caught) survivors.push_back(fmt::format("{}[{}][{}]", family_name(fam), i, j));
            }
    }
    Outcome o;
    o.pass = survivors.empty() && mutations > 0;
    o.detail = fmt::format("{} mutations, {} undetected", mutations, survivors.size());
    for (std::size_t i = 0; i < survivors.size() && i < 8; ++i) o.detail += "; " + survivors[i];
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<int, std::function<Outcome()>>> gates = {
        {1, ac1}, {2, ac2}, {3, ac3}, {4, ac4},   {5, ac5},   {6, ac6},
        {7, ac7}, {8, ac8}, {9, ac9}, {10, ac10}, {11, ac11}, {12, ac12},
    };
    int failed = 0;
    for (const auto& [n, fn] : gates) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << "AC" << n << " " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
