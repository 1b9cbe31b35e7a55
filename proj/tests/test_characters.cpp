#include <doctest.h>

#include <numeric>

#include "qsid/characters.hpp"
#include "test_util.hpp"

using namespace qsid;
using qsid::test::window;

TEST_CASE("conformal dimensions")
{
    CHECK(conformal_dim({3, 14}, {1, 1}) == 0);
    CHECK(conformal_dim({3, 14}, {2, 1}) - conformal_dim({3, 14}, {1, 1}) == 3);
    CHECK(conformal_dim({3, 14}, {1, 1}) == conformal_dim({3, 14}, {2, 13}));
    for (int p = 2; p <= 8; ++p)
        for (int pp = p + 1; pp <= 30; ++pp) {
            if (std::gcd(p, pp) != 1) continue;
            for (int r = 1; r < p; ++r)
                for (int s = 1; s < pp; ++s)
                    CHECK(conformal_dim({p, pp}, {r, s}) == conformal_dim({p, pp}, {p - r, pp - s}));
        }
}

TEST_CASE("combination shifts are dimension differences")
{
    for (int pp = 4; pp <= 40; ++pp) {
        if (pp % 3 == 0) continue;
        for (int s = 1; s < pp; ++s) {
            Rational d = conformal_dim({3, pp}, {2, s}) - conformal_dim({3, pp}, {1, s});
            CHECK(d == Rational(pp, 4) - Rational(s, 2));
            CHECK(d == combo_shift(3, pp, s));
        }
    }
    for (int pp = 5; pp <= 41; pp += 2)
        for (int s = 1; s < pp; ++s)
            CHECK(conformal_dim({4, pp}, {3, s}) - conformal_dim({4, pp}, {1, s}) == Rational(pp, 2) - s);
}

TEST_CASE("central charges")
{
    CHECK(central_charge(2, 3, 14) == Rational(-114, 7));
    CHECK(central_charge(3, 3, 7) == Rational(-114, 7));
    CHECK(central_charge(2, 2, 5) == Rational(-22, 5));
    CHECK_THROWS_AS(central_charge(1, 2, 5), DomainError);
}

TEST_CASE("bosonic sums")
{
    CHECK(window(bosonic({2, 5}, {1, 2}, 6), 0, 6) == std::vector<long>{1, 1, 1, 1, 2, 2, 3});
    CHECK(window(bosonic({2, 5}, {1, 1}, 6), 0, 6) == std::vector<long>{1, 0, 1, 1, 1, 1, 2});
    CHECK_THROWS_AS(bosonic({4, 6}, {1, 1}, 6), DomainError);
    CHECK_THROWS_AS(bosonic({3, 5}, {3, 1}, 6), DomainError);
}

TEST_CASE("bosonic symmetry and normalisation")
{
    for (int p = 2; p <= 7; ++p)
        for (int pp = p + 1; p * pp <= 60; ++pp) {
            if (std::gcd(p, pp) != 1) continue;
            for (int r = 1; r < p; ++r)
                for (int s = 1; s < pp; ++s) {
                    QSeries a = bosonic({p, pp}, {r, s}, 60);
                    CHECK(a.coeff_at(0) == 1);
                    CHECK(a == bosonic({p, pp}, {p - r, pp - s}, 60));
                }
        }
}

TEST_CASE("pure products")
{
    CHECK(bosonic({2, 5}, {1, 2}, 60) == product_char(ProductCase::p_is_2r, {2, 5}, {1, 2}, 60));
    CHECK(bosonic({4, 9}, {1, 3}, 60) == product_char(ProductCase::pp_is_3s, {4, 9}, {1, 3}, 60));
    CHECK(product_char(ProductCase::p_is_3r, {3, 7}, {1, 2}, 10).coeff_at(0) == 1);
    CHECK_THROWS_AS(product_char(ProductCase::p_is_2r, {3, 7}, {1, 2}, 10), DomainError);
}

TEST_CASE("combination products")
{
    QSeries prim = combo_product(3, 14, 1, 1, ComboForm::primary, 1, 60);
    QSeries sum = bosonic({3, 14}, {1, 1}, 60) + bosonic({3, 14}, {2, 1}, 60).shifted(3).truncated(60);
    CHECK(!first_mismatch(prim, sum));

    CHECK(combo_product(3, 8, 2, 1, ComboForm::primary, 2, 120) ==
          combo_product(3, 8, 2, 1, ComboForm::alternative, 2, 120));

    QSeries p4 = combo_product(4, 5, 1, 1, ComboForm::primary, 2, 20);
    CHECK(p4.coeff_at(3) == 1);

    CHECK_THROWS_AS(combo_product(3, 7, 1, 1, ComboForm::primary, 2, 20), SubstrateError);
    CHECK_THROWS_AS(combo_product(3, 8, 4, 1, ComboForm::alternative, 2, 20), DomainError);
    CHECK_THROWS_AS(combo_product(3, 9, 1, 1, ComboForm::primary, 4, 20), DomainError);
    // The minus rows evaluate too.
    CHECK(combo_product(4, 9, 2, -1, ComboForm::primary, 2, 40) == bosonic_combo(4, 9, 2, -1, 2, 40));
}

TEST_CASE("substrate rule")
{
    CHECK(combo_substrate(3, 7, 1) == 4);
    CHECK(combo_substrate(3, 10, 2) == 2);
    CHECK(combo_substrate(3, 10, 1) == 1);
    CHECK(combo_substrate(4, 9, 3) == 2);
}
