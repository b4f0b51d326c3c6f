#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/zmod.hpp"

#include <numeric>
#include <set>

using namespace eucl::zmod;

namespace {

bool naive_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 naive_order(u64 x, u64 n)
{
    u64 y = x % n, k = 1;
    while (y != 1 % n) {
        y = y * x % n;
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("factorize examples")
{
    CHECK(factorize(1456).factors == std::vector<std::pair<u64, unsigned>>{{2, 4}, {7, 1}, {13, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(857584).factors ==
          std::vector<std::pair<u64, unsigned>>{{2, 4}, {7, 1}, {13, 1}, {19, 1}, {31, 1}});
    // 16 * 217 * 247 by trial division
    u64 n = 857584;
    std::vector<std::pair<u64, unsigned>> oracle;
    for (u64 d = 2; d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) oracle.emplace_back(d, e);
    }
    CHECK(factorize(857584).factors == oracle);
}

TEST_CASE("factorize reassembles and is prime-valued up to 10^4")
{
    for (u64 n = 1; n <= 10000; ++n) {
        auto f = factorize(n);
        REQUIRE(f.multiply_out() == n);
        u64 last = 0;
        for (auto [p, e] : f.factors) {
            REQUIRE(naive_prime(p));
            REQUIRE(p > last);
            REQUIRE(e >= 1);
            last = p;
        }
    }
}

TEST_CASE("factorize large semiprimes through rho, independent of seed")
{
    const u64 p = 1000003, q = 998244353;
    auto f1 = factorize(p * q, 1);
    auto f2 = factorize(p * q, 987654321);
    CHECK(f1 == f2);
    CHECK(f1.factors == std::vector<std::pair<u64, unsigned>>{{p, 1}, {q, 1}});
    CHECK(is_prime(998244353));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("unit group structure")
{
    auto g7 = unit_group(7);
    CHECK(g7.order() == 6);
    CHECK(g7.generator_orders == std::vector<u64>{6});
    auto g16 = unit_group(16);
    std::multiset<u64> ords(g16.generator_orders.begin(), g16.generator_orders.end());
    CHECK(ords == std::multiset<u64>{2, 4});
    auto g91 = unit_group(91);
    u64 count = 0;
    for (u64 a = 1; a < 91; ++a) count += std::gcd(a, u64{91}) == 1;
    CHECK(g91.order() == count);
    CHECK(count == 72);
    auto el = g91.elements();
    CHECK(std::set<u64>(el.begin(), el.end()).size() == 72);
    for (u64 n : {2, 4, 8, 12, 1456, 857584}) {
        auto g = unit_group(n);
        auto e = g.elements();
        CHECK(std::set<u64>(e.begin(), e.end()).size() == euler_phi(n));
        for (u64 x : e) CHECK(std::gcd(x, n) == 1);
    }
}

TEST_CASE("element orders against brute force")
{
    CHECK(element_order(6, 7) == 2);
    CHECK(element_order(3, 7) == 6);
    CHECK(element_order(2, 7) == 3);
    CHECK_THROWS_AS(element_order(7, 14), std::invalid_argument);
    for (u64 n = 2; n <= 500; ++n)
        for (u64 x = 1; x < n; ++x)
            if (std::gcd(x, n) == 1) REQUIRE(element_order(x, n) == naive_order(x, n));
}

TEST_CASE("strip_two_part")
{
    CHECK(strip_two_part(3, 7) == 2);
    CHECK(element_order(strip_two_part(3, 7), 7) == 3);
    CHECK(strip_two_part(6, 7) == 1);
    CHECK(strip_two_part(2, 7) == 2);
    CHECK_THROWS_AS(strip_two_part(0, 7), std::invalid_argument);
}

TEST_CASE("strip_two_part preserves odd-order images in quotients of (Z/91)^x")
{
    const u64 n = 91;
    auto all = unit_group(n).elements();
    // every subgroup of (Z/91)^x arises as the closure of at most two elements
    std::set<std::vector<u64>> seen;
    std::vector<SubgroupModN> subs;
    for (u64 a : all)
        for (u64 b : all) {
            std::vector<u64> g{a, b};
            auto s = subgroup_closure(g, n);
            if (seen.insert(s.elements()).second) subs.push_back(s);
        }
    for (const auto& h : subs) {
        u64 index = 72 / h.size();
        if (index % 2 == 0) continue;
        for (u64 c : all) {
            u64 s = strip_two_part(c, n);
            REQUIRE(element_order(s, n) % 2 == 1);
            // in an odd-order quotient squaring is a bijection, so the image of
            // the stripped element generates the same cyclic image as c
            std::vector<u64> gc{c}, gs{s};
            std::vector<u64> hc(h.elements()), hs(h.elements());
            hc.push_back(c);
            hs.push_back(s);
            CHECK(subgroup_closure(hc, n) == subgroup_closure(hs, n));
        }
    }
}

TEST_CASE("jacobi symbol")
{
    CHECK(jacobi_symbol(2, 7) == 1);
    CHECK(jacobi_symbol(7, 7) == 0);
    CHECK_THROWS_AS(jacobi_symbol(3, 8), std::invalid_argument);
    for (u64 p = 3; p <= 1000; ++p) {
        if (!naive_prime(p)) continue;
        for (u64 a = 0; a < p; ++a) {
            u64 e = powmod(a, (p - 1) / 2, p);
            int oracle = e == 0 ? 0 : (e == 1 ? 1 : -1);
            REQUIRE(jacobi_symbol(static_cast<i64>(a), p) == oracle);
            REQUIRE(jacobi_symbol(static_cast<i64>(a) - static_cast<i64>(p), p) == oracle);
        }
    }
}

TEST_CASE("subgroup closure and helpers")
{
    std::vector<u64> g6{6}, none, g3{3};
    CHECK(subgroup_closure(g6, 7).elements() == std::vector<u64>{1, 6});
    CHECK(subgroup_closure(none, 7).elements() == std::vector<u64>{1});
    CHECK(subgroup_closure(g3, 7).size() == 6);
    std::vector<u64> bad{7};
    CHECK_THROWS_AS(subgroup_closure(bad, 14), std::invalid_argument);

    auto h = subgroup_closure(g6, 7);
    auto l = lift(h, 91);
    CHECK(l.size() == 2 * 12);
    CHECK(reduce(l, 7) == h);
    CHECK(reduction_kernel(91, 7).size() == 12);
    CHECK(intersect(l, lift(subgroup_closure(std::vector<u64>{12}, 13), 91)).size() == 4);
    CHECK(order_modulo(3, h) == 3);
}
