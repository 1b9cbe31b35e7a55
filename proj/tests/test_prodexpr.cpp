#include <doctest.h>

#include <algorithm>
#include <random>

#include "qsid/characters.hpp"
#include "qsid/prodexpr.hpp"
#include "test_util.hpp"

using namespace qsid;
using qsid::test::window;

TEST_CASE("smallest sentence")
{
    ProductExpr e = parse_product("(q;q)_inf");
    REQUIRE(e.numerator.size() == 1);
    CHECK(e.denominator.empty());
    CHECK(e.numerator[0].args == std::vector<QMonomial>{{1, 1}});
    CHECK(!e.numerator[0].length);
}

TEST_CASE("rogers product text")
{
    ProductExpr e = parse_product("(-q^3,-q^7,q^10;q^10)_inf (q^4,q^16;q^20)_inf / (q^4;q^4)_inf");
    REQUIRE(e.numerator.size() == 2);
    CHECK(e.numerator[0].args == std::vector<QMonomial>{{-1, 3}, {-1, 7}, {1, 10}});
    CHECK(e.numerator[0].base == QMonomial{1, 10});
    CHECK(e.denominator[0].base == QMonomial{1, 4});
}

TEST_CASE("fractional and finite forms")
{
    ProductExpr e = parse_product("( -q^(1/2) ; q ) _ 3");
    CHECK(e.numerator[0].args[0] == QMonomial{-1, Rational(1, 2)});
    CHECK(e.numerator[0].length == 3);
    CHECK(natural_denom(e) == 2);
    CHECK(natural_denom(parse_product("(q^(3/4);q^(1/2))_inf")) == 4);
}

TEST_CASE("parse errors report a position")
{
    auto pos = [](const char* t) {
        try {
            parse_product(t);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position);
        }
        return -1L;
    };
    CHECK(pos("(q^s;q)_inf") == 3);
    CHECK(pos("(q;q)") == 5);
    CHECK(pos("(q;q)_inf /") == 11);
    CHECK(pos("(q,;q)_inf") == 3);
    CHECK(pos("") == 0);
    CHECK(pos("(q;q)_inf)") == 9);
}

TEST_CASE("evaluation")
{
    CHECK(eval_product(parse_product("(q;q)_inf / (q;q)_inf"), 1, 20) == QSeries::one(1, 20));
    QSeries p5 = eval_product(parse_product("(q^5;q^5)_inf / (q;q)_inf"), 1, 5);
    CHECK(window(p5, 0, 5) == std::vector<long>{1, 1, 2, 3, 5, 6});
    CHECK_THROWS_AS(eval_product(parse_product("(q^(1/2);q)_inf"), 1, 5), SubstrateError);
    CHECK_THROWS_AS(eval_product(parse_product("1 / (q^0;q)_inf"), 1, 5), VanishingProductError);
}

TEST_CASE("rogers text matches the character combination")
{
    // M(3,10): chi_{1,1} + q^2 chi_{2,1} lives on q^4 after the substitution; compare on q.
    QSeries text = eval_product(parse_product("(-q^3,-q^7,q^10;q^10)_inf (q^4,q^16;q^20)_inf / (q^4;q^4)_inf"), 1, 200);
    QSeries combo = bosonic_combo(3, 5, 1, 1, 4, 200);
    CHECK(!first_mismatch(text, combo.substituted(4).truncated(200)));
}

TEST_CASE("render round-trips on every catalog product")
{
    std::vector<std::string> texts = {
        "(q;q)_inf", "(-q^(1/2);q)_inf", "(-q^0;q)_inf", "1 / (q,q^2,q^3,q^4,q^5,q^6;q^7)_inf",
        "(-q^(3/2),-q^(7/2),q^5;q^5)_inf (q^2,q^8;q^10)_inf / (q;q)_inf", "(q;q^2)_7 / (q^2;q^2)_inf",
    };
    for (const auto& t : texts) {
        ProductExpr a = parse_product(t);
        ProductExpr b = parse_product(render(a));
        CHECK(a == b);
        CHECK(render(b) == render(a));
    }
    for (int p : {3, 4})
        for (int pp = p + 1; pp <= 20; ++pp)
            for (int s = 1; s < pp; ++s)
                for (auto form : {ComboForm::primary, ComboForm::alternative}) {
                    try {
                        ProductExpr e = combo_product_expr(p, pp, s, 1, form);
                        CHECK(parse_product(render(e)) == e);
                    } catch (const DomainError&) {
                    }
                }
}

TEST_CASE("numerator order does not matter")
{
    ProductExpr e = parse_product("(-q^(1/2),q^3;q^5)_inf (q;q^2)_4 (-q^2;q^3)_inf (q^(3/2);q)_2 / (q;q)_inf");
    QSeries want = eval_product(e, 2, 120);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(e.numerator.begin(), e.numerator.end(), rng);
        for (auto& f : e.numerator) std::shuffle(f.args.begin(), f.args.end(), rng);
        CHECK(eval_product(e, 2, 120) == want);
    }
}
