#include <doctest.h>

#include "qsid/fermionic.hpp"
#include "qsid/verify.hpp"
#include "test_util.hpp"

using namespace qsid;
using qsid::test::window;

namespace {

int substrate_of(const std::string& id, const Params& p) { return find_record(id)->substrate(p); }

} // namespace

TEST_CASE("family names round-trip")
{
    for (FormFamily f : all_families()) {
        auto back = family_from_name(family_name(f));
        REQUIRE(back);
        CHECK(*back == f);
    }
    CHECK(!family_from_name("no_such_family"));
}

TEST_CASE("exponent with tail")
{
    FermionicFormSpec ag = build_form(FormFamily::ag, {{"k", 3}, {"i", 1}});
    CHECK(ag.chain_len == 2);
    CHECK(ag.exponent({2, 1}) == 8);
    FermionicFormSpec ag2 = build_form(FormFamily::ag, {{"k", 3}, {"i", 3}});
    CHECK(ag2.exponent({2, 1}) == 5);
}

TEST_CASE("small expansions")
{
    auto rr = eval_form(build_form(FormFamily::ag, {{"k", 2}, {"i", 2}}), 1, 6);
    CHECK(window(rr, 0, 6) == std::vector<long>{1, 1, 1, 1, 2, 2, 3});

    auto t22 = eval_form(build_form(FormFamily::thm_2_2, {{"h", 1}}), 1, 2);
    CHECK(window(t22, 0, 2) == std::vector<long>{1, 1, 2});

    auto m = eval_form(build_form(FormFamily::m37, {{"k", 1}}), 1, 5);
    CHECK(window(m, 0, 5) == std::vector<long>{1, 0, 1, 2, 3, 3});
}

TEST_CASE("constant terms of the combination forms")
{
    for (std::int64_t g = 1; g <= 3; ++g) {
        std::int64_t pp1 = 3 * g + 1, pp3 = 3 * g + 2;
        for (std::int64_t s = 1; s <= g + 1; ++s) {
            Params p{{"g", g}, {"s", s}};
            int D = substrate_of("thm_2_1", p);
            auto v = eval_form(build_form(FormFamily::thm_2_1, p), D, 2 * D);
            CHECK(v.coeff_at(0) == (pp1 == 2 * s ? 2 : 1));
        }
        for (std::int64_t s = 1; s <= g + 1; ++s) {
            Params p{{"g", g}, {"s", s}};
            int D = substrate_of("thm_2_3", p);
            auto v = eval_form(build_form(FormFamily::thm_2_3, p), D, 2 * D);
            CHECK(v.coeff_at(0) == (pp3 == 2 * s ? 2 : 1));
        }
    }
}

TEST_CASE("free coordinates give the same series")
{
    const std::vector<std::pair<FormFamily, Params>> cases = {
        {FormFamily::ag, {{"k", 3}, {"i", 2}}},
        {FormFamily::thm_2_1, {{"g", 2}, {"s", 1}}},
        {FormFamily::thm_2_5, {{"g", 2}, {"s", 3}}},
        {FormFamily::m37, {{"k", 2}}},
    };
    for (const auto& [fam, p] : cases) {
        FermionicFormSpec spec = build_form(fam, p);
        FermionicFormSpec free = to_free_coordinates(spec);
        CHECK(free.chain_len == 0);
        CHECK(free.num_vars() == spec.num_vars());
        CHECK(eval_form(spec, 4, 80) == eval_form(free, 4, 80));
    }
}

TEST_CASE("certified evaluation agrees")
{
    FermionicFormSpec spec = build_form(FormFamily::thm_2_7, {{"g", 2}, {"s", 2}});
    EvalOptions cert;
    cert.certify = true;
    CHECK(eval_form(spec, 2, 60, cert) == eval_form(spec, 2, 60));
}

TEST_CASE("substrate too coarse")
{
    FermionicFormSpec spec = build_form(FormFamily::thm_2_5, {{"g", 1}, {"s", 1}});
    CHECK(substrate_of("thm_2_5", {{"g", 1}, {"s", 1}}) > 1);
    CHECK_THROWS_AS(eval_form(spec, 1, 10), SubstrateError);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(build_form(FormFamily::thm_2_1, {{"g", 1}, {"s", 9}}), DomainError);
    CHECK_THROWS_AS(build_form(FormFamily::thm_2_1, {{"g", 0}, {"s", 1}}), DomainError);
    CHECK_THROWS_AS(build_form(FormFamily::thm_2_1, {{"g", 2}}), DomainError);
    CHECK_THROWS_AS(build_form(FormFamily::thm_2_2, {{"h", 1}, {"g", 1}}), DomainError);
    CHECK_THROWS_AS(build_form(FormFamily::m37, {{"k", 5}}), DomainError);
    CHECK_THROWS_AS(build_form(FormFamily::ag, {{"k", 2}, {"i", 3}}), DomainError);
}

TEST_CASE("every family builds from its sample parameters")
{
    for (FormFamily f : all_families()) {
        FermionicFormSpec spec = build_form(f, sample_params(f));
        CHECK(spec.quad.size() == spec.num_vars());
        CHECK(spec.effective_lin().size() == spec.num_vars());
    }
}

TEST_CASE("B matrix")
{
    for (int g = 2; g <= 6; ++g) CHECK(bmatrix_check(g, 7));
    Matrix b = bmatrix(4);
    REQUIRE(b.size() == 3);
    CHECK(b[0][0] == 1);
    CHECK(b[2][1] == 2);
    b[1][2] += 1;
    CHECK(!bmatrix_check(4, b, 7));
    CHECK(!bmatrix_check(4, bmatrix(3), 7));
}

TEST_CASE("json view")
{
    auto j = to_json(build_form(FormFamily::thm_2_6, {{"g", 2}}));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"chain_len", "extra_vars", "quad", "lin", "const", "tail_start",
                                           "denom_factors", "gaussian_factor"});
    CHECK(j["quad"].is_array());
    CHECK(j["quad"][0][0].is_string());
    CHECK(to_json(build_form(FormFamily::thm_2_6, {{"g", 2}})).dump() == j.dump());
}
