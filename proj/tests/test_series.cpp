#include <doctest.h>

#include "qsid/qfunctions.hpp"
#include "test_util.hpp"

using namespace qsid;
using qsid::test::coeffs;
using qsid::test::window;

TEST_CASE("monomial")
{
    QSeries one = QSeries::monomial(1, 0, 1, 10);
    CHECK(one.order() == 10);
    CHECK(coeffs(one)[0] == 1);
    CHECK(one.coeff_at(5) == 0);

    QSeries q3 = QSeries::monomial(1, 12, 4, 40);
    CHECK(q3.denom() == 4);
    CHECK(q3.coeff_at(12) == 1);
    CHECK(q3.coeff_at(11) == 0);

    QSeries pref = QSeries::monomial(1, -3, 4, 40);
    CHECK(pref.offset() == -3);
    CHECK(pref.coeff_at(-3) == 1);
    CHECK(pref.order() == 40);

    CHECK_THROWS_AS(QSeries::monomial(1, 11, 1, 10), TruncationError);
}

TEST_CASE("add and order rules")
{
    QSeries a = QSeries::monomial(1, 0, 1, 10), b = QSeries::monomial(1, 1, 1, 6);
    QSeries s = a + b;
    CHECK(s.order() == 6);
    CHECK(window(s, 0, 2) == std::vector<long>{1, 1, 0});
    QSeries z = s + (-s);
    CHECK(z.is_zero());
    CHECK(z.order() == 6);

    QSeries lo = QSeries::monomial(1, -2, 1, 8);
    CHECK((lo + a).offset() == -2);
    CHECK_THROWS_AS(a + QSeries::one(2, 10), SubstrateError);
}

TEST_CASE("mul")
{
    QSeries geo = invert(QSeries::from_coefficients(1, 0, {1, -1}).extended(12));
    QSeries tel = QSeries::from_coefficients(1, 0, {1, -1}).extended(12) * geo;
    CHECK(tel == QSeries::one(1, 12));

    QSeries qq2 = poch_finite({1, 1}, 1, 2, 1, 6);
    CHECK(window(qq2, 0, 6) == std::vector<long>{1, -1, -1, 1, 0, 0, 0});

    // Conservative Laurent order rule.
    QSeries a = QSeries::zero(1, -1, 5), b = QSeries::zero(1, 2, 7);
    QSeries p = a * b;
    CHECK(p.offset() == 1);
    CHECK(p.order() == std::min<std::int64_t>(5 + 2, 7 - 1));
}

TEST_CASE("invert")
{
    QSeries geo = invert(QSeries::from_coefficients(1, 0, {1, -1}).extended(10));
    CHECK(window(geo, 0, 10) == std::vector<long>(11, 1));

    QSeries part = invert(poch_inf({1, 1}, 1, 1, 10));
    CHECK(part.coeff_at(10) == 42);

    QSeries a = QSeries::from_coefficients(1, 1, {1, 1}).extended(12);
    QSeries ai = invert(a);
    CHECK(ai.offset() == -1);
    CHECK(window(ai, -1, 2) == std::vector<long>{1, -1, 1, -1});
    QSeries prod = a * ai;
    CHECK(prod.coeff_at(0) == 1);
    for (std::int64_t t = prod.offset(); t <= prod.order(); ++t)
        if (t != 0) CHECK(prod.coeff_at(t) == 0);

    CHECK_THROWS_AS(invert(QSeries::from_coefficients(1, 0, {2, 1})), NotInvertibleError);
}

TEST_CASE("coeff_at beyond order is an error")
{
    QSeries s = QSeries::from_coefficients(1, 0, {1, 1});
    CHECK(s.coeff_at(1) == 1);
    CHECK(s.coeff_at(-4) == 0);
    CHECK_THROWS_AS(s.coeff_at(2), TruncationError);
    QSeries p = invert(poch_inf({1, 1}, 1, 1, 30));
    CHECK_THROWS_AS(p.coeff_at(31), TruncationError);
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> off(-3, 3), len(0, 25), den(1, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        int D = den(rng);
        auto mk = [&] {
            std::int64_t o = off(rng);
            return qsid::test::random_series(rng, D, o, o + len(rng));
        };
        QSeries a = mk(), b = mk(), c = mk();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        auto same_through = [](const QSeries& x, const QSeries& y) {
            return !first_mismatch(x, y).has_value();
        };
        CHECK(same_through((a * b) * c, a * (b * c)));
        CHECK(same_through(a * (b + c), a * b + a * c));
        CHECK((a + (-a)).is_zero());
    }
}

TEST_CASE("truncation consistency on random series")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> len(1, 30);
    for (int trial = 0; trial < 1000; ++trial) {
        QSeries a = qsid::test::random_series(rng, 2, 0, len(rng));
        QSeries b = qsid::test::random_series(rng, 2, 0, len(rng));
        std::int64_t k = std::min(a.order(), b.order()) / 2;
        CHECK((a * b).truncated(k) == a.truncated(k) * b.truncated(k));
        CHECK((a + b).truncated(k) == a.truncated(k) + b.truncated(k));
        if (a.coeff_at(0) == 1 || a.coeff_at(0) == -1) {
            QSeries ai = invert(a);
            CHECK(invert(a.truncated(k)) == ai.truncated(k));
            QSeries prod = a * ai;
            CHECK(prod == QSeries::one(2, prod.order()));
        }
    }
}

TEST_CASE("promotion to big integers keeps exact values")
{
    const long big = std::numeric_limits<std::int64_t>::max() - 5;
    QSeries a = QSeries::from_coefficients(1, 0, {big, big, 1});
    QSeries s = a + a;
    CHECK(s.wide());
    CHECK(s.coeff_at(0) == BigInt(big) * 2);
    CHECK(s.coeff_at(2) == 2);

    QSeries p = invert(poch_inf({1, 1}, 1, 1, 500));
    // p(500) exceeds 64 bits.
    CHECK(p.coeff_at(500).get_str() == "2300165032574323995027");
}

TEST_CASE("refine, substitute, shift")
{
    QSeries s = QSeries::from_coefficients(1, 0, {1, 2, 3});
    QSeries r = s.refined(2);
    CHECK(r.denom() == 2);
    CHECK(r.order() == 5);
    CHECK(window(r, 0, 5) == std::vector<long>{1, 0, 2, 0, 3, 0});

    QSeries h = QSeries::from_coefficients(2, 0, {1, 1, 1, 1});
    QSeries q2 = h.substituted(2);
    CHECK(q2.denom() == 1);
    CHECK(window(q2, 0, 3) == std::vector<long>{1, 1, 1, 1});

    QSeries q4 = QSeries::from_coefficients(1, 0, {1, 1}).substituted(4);
    CHECK(q4.order() == 7);
    CHECK(window(q4, 0, 7) == std::vector<long>{1, 0, 0, 0, 1, 0, 0, 0});

    CHECK(s.shifted(-2).offset() == -2);
    CHECK_THROWS_AS(s.refined(0), SubstrateError);
}

TEST_CASE("coefficient csv")
{
    QSeries s = QSeries::from_coefficients(2, -1, {3, 0, -1});
    CHECK(coefficient_csv(s) == "t_exponent,q_exponent,coefficient\n-1,-1/2,3\n0,0,0\n1,1/2,-1\n");
}
