#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/errors.hpp"
#include "eucl/units.hpp"

#include <cmath>
#include <random>

using namespace eucl;

namespace {

double reg_value(const MaximalOrder& o, const std::vector<Elt>& u)
{
    return regulator(o, u).mid_double();
}

}  // namespace

TEST_CASE("conductor-7 units")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-2x+1"));
    auto us = find_units(*o);
    REQUIRE(us.units.size() == 2);
    for (const auto& u : us.units) CHECK(abs(o->norm(u)) == 1);
    CHECK(us.saturated);
    CHECK(us.regulator.radius_double() <= 1e-9 * us.regulator.mid_double());
    CHECK(multiplicatively_independent(*o, us.units));
    // regulator of the simplest cubic field of conductor 7
    CHECK(std::fabs(us.regulator.mid_double() - 0.5254545) < 1e-6);
}

TEST_CASE("no smaller regulator among short units at doubled bound")
{
    for (const char* f : {"x^3-x^2-2x+1", "x^3-x^2-4x-1", "x^3-x^2-30x-27"}) {
        auto o = maximal_order(IntPoly::parse(f));
        auto us = find_units(*o);
        const double r = us.regulator.mid_double();
        Int worst = 0;
        for (const auto& u : us.units) worst = std::max(worst, t2_norm(*o, u));
        std::vector<Elt> pool;
        for (auto& x : short_elements(*o, unit_ideal(*o), 2 * worst.get_d()))
            if (abs(o->norm(x)) == 1 && x != o->one()) pool.push_back(x);
        CAPTURE(f);
        REQUIRE(pool.size() >= 2);
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                if (!multiplicatively_independent(*o, {pool[i], pool[j]})) continue;
                double q = reg_value(*o, {pool[i], pool[j]}) / r;
                ++pairs;
                CHECK(q > 1 - 1e-9);
                CHECK(std::fabs(q - std::round(q)) < 1e-6);
            }
        CHECK(pairs > 0);
    }
}

TEST_CASE("regulator errors and invariance")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-30x-27"));
    auto us = find_units(*o);
    const auto& u = us.units[0];
    const auto& v = us.units[1];
    CHECK_THROWS_AS(regulator(*o, {u, o->mul(u, u)}), std::domain_error);
    CHECK_THROWS_AS(regulator(*o, {u}), std::invalid_argument);
    CHECK_THROWS_AS(regulator(*o, {u, o->from_int(2)}), std::invalid_argument);
    Elt w = o->mul(*o->unit_inverse(u), v);
    CHECK(std::fabs(reg_value(*o, {u, w}) - reg_value(*o, {u, v})) <= 1e-9 * reg_value(*o, {u, v}));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-3, 3);
    const double r0 = us.regulator.mid_double();
    int done = 0;
    while (done < 20) {
        long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
        if (std::labs(a * e - b * c) != 1) continue;
        auto x = power_product(*o, us.units, {a, b});
        auto y = power_product(*o, us.units, {c, e});
        CHECK(abs(o->norm(x)) == 1);
        CHECK(std::fabs(reg_value(*o, {x, y}) - r0) <= 1e-9 * r0);
        ++done;
    }
}

TEST_CASE("multiplicative independence")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-2x+1"));
    auto us = find_units(*o);
    const auto& e = us.units[0];
    CHECK_FALSE(multiplicatively_independent(*o, {e, o->mul(e, e)}));
    CHECK_FALSE(multiplicatively_independent(*o, {e, o->neg(e)}));
    CHECK_FALSE(multiplicatively_independent(*o, {o->neg(o->one())}));
    CHECK(multiplicatively_independent(*o, us.units));
    CHECK_FALSE(multiplicatively_independent(*o, {us.units[0], us.units[1], o->mul(us.units[0], us.units[1])}));
    // 2 and 3 have proportional log vectors but no relation: not decidable by this method
    CHECK_THROWS_AS(multiplicatively_independent(*o, {o->from_int(2), o->from_int(3)}), IndeterminateError);
    CHECK(multiplicatively_independent(*o, {o->from_int(2), e}));
    CHECK_THROWS_AS(multiplicatively_independent(*o, {o->from_int(0)}), std::invalid_argument);

    auto o13 = maximal_order(IntPoly::parse("x^3-x^2-4x-1"));
    auto us13 = find_units(*o13);
    CHECK(multiplicatively_independent(*o, us.units, *o13, {us13.units[0]}));
    CHECK(multiplicatively_independent(*o, us.units, *o13, us13.units));
    CHECK_FALSE(multiplicatively_independent(*o, {e, o->pow(e, 3)}, *o13, {us13.units[0]}));
    // rational elements of the two fields can cancel
    CHECK_FALSE(multiplicatively_independent(*o, {o->from_int(2)}, *o13, {o13->from_int(4)}));
}

TEST_CASE("saturation extracts square roots")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-2x+1"));
    auto us = find_units(*o);
    const double r = us.regulator.mid_double();
    std::vector<Elt> sq{o->mul(us.units[0], us.units[0]), us.units[1]};
    CHECK(std::fabs(reg_value(*o, sq) / r - 2) < 1e-9);
    auto fixed = saturate(*o, sq, 7);
    CHECK(std::fabs(reg_value(*o, fixed) - r) < 1e-9 * r);
    // the new element is a root of the old one up to sign
    Elt p = o->mul(fixed[0], fixed[0]);
    CHECK((p == sq[0] || p == o->neg(sq[0])));

    // index 3 * 5 * 7 from cubes, fifth and seventh powers mixed with the other unit
    std::vector<Elt> mixed{o->mul(o->pow(us.units[0], 3), us.units[1]), o->pow(us.units[1], 35)};
    CHECK(std::fabs(reg_value(*o, mixed) / r - 105) < 1e-6);
    auto fixed2 = saturate(*o, mixed, 7);
    CHECK(std::fabs(reg_value(*o, fixed2) - r) < 1e-9 * r);
    // l = 11 is beyond the bound
    std::vector<Elt> eleven{o->pow(us.units[0], 11), us.units[1]};
    CHECK(std::fabs(reg_value(*o, saturate(*o, eleven, 7)) / r - 11) < 1e-6);
}
