#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/ball.hpp"
#include "eucl/linalg.hpp"
#include "eucl/poly.hpp"
#include "eucl/zmod.hpp"

#include <cmath>
#include <random>

using namespace eucl;

namespace {

// closed form for monic cubics
Int cubic_disc(const IntPoly& f)
{
    Int c = f[0], b = f[1], a = f[2];
    return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

}  // namespace

TEST_CASE("parse and print")
{
    auto f = IntPoly::parse("x^3 - x^2 - 30x - 27");
    CHECK(f == IntPoly::from_longs({-27, -30, -1, 1}));
    CHECK(f.to_string() == "x^3-x^2-30x-27");
    CHECK(IntPoly::parse("x^3-x^2-2*x+1") == IntPoly::from_longs({1, -2, -1, 1}));
    CHECK(IntPoly::parse("-x+5").to_string() == "-x+5");
    CHECK_THROWS_AS(IntPoly::parse("x^3+*"), std::invalid_argument);
    CHECK_THROWS_AS(IntPoly::parse("y^2"), std::invalid_argument);
}

TEST_CASE("discriminants of table polynomials")
{
    for (const char* s : {"x^3-x^2-2x+1", "x^3-x^2-4x-1", "x^3-x^2-30x-27", "x^3-x^2-30x+64", "x^3-x^2-82x+64",
                          "x^3-x^2-156x+799", "x^3+5x^2-7x-11"}) {
        auto f = IntPoly::parse(s);
        CHECK(discriminant(f) == cubic_disc(f));
    }
    CHECK(discriminant(IntPoly::parse("x^3-x^2-2x+1")) == 49);
    CHECK(discriminant(IntPoly::parse("x^3-x^2-4x-1")) == 169);
    // x^2 + x + 1: -3
    CHECK(discriminant(IntPoly::parse("x^2+x+1")) == -3);
}

TEST_CASE("real root isolation")
{
    auto f = IntPoly::parse("x^3-x^2-2x+1");
    CHECK(count_real_roots(f) == 3);
    auto roots = isolate_real_roots(f, 40);
    REQUIRE(roots.size() == 3);
    // roots are 2cos(pi k / 7) for k = 1, 3, 5
    std::vector<double> expect{2 * std::cos(M_PI / 7), 2 * std::cos(3 * M_PI / 7), 2 * std::cos(5 * M_PI / 7)};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 3; ++i) {
        Ball b = Ball::from_dyadic_interval(roots[i].num, roots[i].k, 128);
        CHECK(b.lower_double() <= expect[i] + 1e-12);
        CHECK(b.upper_double() >= expect[i] - 1e-12);
        CHECK(b.radius_double() < 1e-12);
    }
    CHECK(count_real_roots(IntPoly::parse("x^2+1")) == 0);
    CHECK(isolate_real_roots(IntPoly::parse("x^3-2"), 20).size() == 1);
}

TEST_CASE("factorization mod q against brute force")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Int> c;
        int deg = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % 41) - 20);
        c.emplace_back(1);
        IntPoly f(c);
        for (std::uint64_t q : {2, 3, 5, 7, 13, 31, 101}) {
            auto fac = factor_mod(f, q);
            // product equals f mod q
            FpPoly prod({1}, q);
            int total = 0;
            for (auto& [g, m] : fac)
                for (int k = 0; k < m; ++k) {
                    prod = prod * g;
                    total += g.degree();
                }
            REQUIRE(prod == FpPoly::from_int_poly(f, q));
            REQUIRE(total == deg);
            // irreducible: no roots for deg >= 2 factors of degree <= 3
            for (auto& [g, m] : fac)
                if (g.degree() >= 2 && g.degree() <= 3)
                    for (std::uint64_t x = 0; x < q; ++x) REQUIRE(g.eval(x) != 0);
            // roots agree with brute force
            std::vector<std::uint64_t> brute;
            FpPoly fp = FpPoly::from_int_poly(f, q);
            for (std::uint64_t x = 0; x < q; ++x)
                if (fp.eval(x) == 0) brute.push_back(x);
            REQUIRE(roots_mod(f, q) == brute);
        }
    }
}

TEST_CASE("roots and splitting at larger primes")
{
    auto f = IntPoly::parse("x^3-x^2-2x+1");
    CHECK(roots_mod(f, 13).size() == 3);
    CHECK(splits_completely_mod(f, 13));
    CHECK_FALSE(splits_completely_mod(f, 3));
    CHECK(factor_degrees_mod(f, 3) == std::vector<std::pair<int, int>>{{3, 1}});
    CHECK(factor_degrees_mod(f, 7) == std::vector<std::pair<int, int>>{{1, 3}});
    // q = 1000003 (prime), check roots evaluate to zero
    const std::uint64_t q = 1000003;
    for (auto r : roots_mod(IntPoly::parse("x^3-x^2-30x-27"), q))
        CHECK(FpPoly::from_int_poly(IntPoly::parse("x^3-x^2-30x-27"), q).eval(r) == 0);
    // a split prime for the conductor-7 field: q = 1000000 - ... pick q = 29 (29 = 1 mod 7)
    CHECK(roots_mod(f, 29).size() == 3);
}

TEST_CASE("determinant and HNF")
{
    IntMatrix m = IntMatrix::from_rows({{2, 3, 1}, {4, 1, -3}, {0, 5, 7}}, 3);
    // cofactor expansion
    Int oracle = Int(2) * (1 * 7 - (-3) * 5) - Int(3) * (4 * 7 - 0) + Int(1) * (4 * 5 - 0);
    CHECK(determinant(m) == oracle);
    auto h = hnf(m);
    REQUIRE(h.rows() == 3);
    CHECK(abs(determinant(h)) == abs(oracle));
    for (int i = 0; i < 3; ++i) {
        CHECK(h(i, i) > 0);
        for (int j = 0; j < i; ++j) {
            CHECK(h(i, j) == 0);
            CHECK(h(j, i) >= 0);
            CHECK(h(j, i) < h(i, i));
        }
    }
    // rows of m lie in the lattice of h and vice versa
    for (int i = 0; i < 3; ++i) {
        std::vector<Rat> v;
        for (auto& x : m.row(i)) v.emplace_back(x);
        auto x = solve_left(h, v);
        REQUIRE(x);
        for (auto& c : *x) CHECK(c.get_den() == 1);
    }
    // canonical: a unimodular change of generators gives the same form
    IntMatrix u = IntMatrix::from_rows({{1, 2, 0}, {0, 1, 0}, {3, 7, 1}}, 3);
    CHECK(hnf(u * m) == h);
    // redundant generators
    IntMatrix r = m;
    r.append_row({6, 4, -2});
    CHECK(hnf(r) == h);
    CHECK(hnf_insert(h, {6, 4, -2}) == h);
}

TEST_CASE("elementary divisors")
{
    IntMatrix m = IntMatrix::from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}, 3);
    CHECK(elementary_divisors(m) == std::vector<Int>{1, 2, 12});
    IntMatrix n = IntMatrix::from_rows({{9, 0}, {0, 3}}, 2);
    CHECK(elementary_divisors(n) == std::vector<Int>{3, 9});
    IntMatrix k = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}, 3);
    CHECK(elementary_divisors(k) == std::vector<Int>{2, 6, 12});
}

TEST_CASE("LLL output is a reduced basis of the same lattice")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        IntMatrix b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = static_cast<long>(rng() % 2001) - 1000;
        if (determinant(b) == 0) continue;
        auto res = lll(b);
        CHECK(abs(determinant(res.transform)) == 1);
        CHECK(res.transform * b == res.reduced);
        // Gram-Schmidt over Q: size reduction and Lovasz with delta = 0.99
        std::vector<std::vector<Rat>> bs(n, std::vector<Rat>(n));
        std::vector<Rat> nrm(n);
        std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < n; ++c) bs[i][c] = res.reduced(i, c);
            for (int j = 0; j < i; ++j) {
                Rat d = 0;
                for (int c = 0; c < n; ++c) d += Rat(res.reduced(i, c)) * bs[j][c];
                mu[i][j] = d / nrm[j];
                for (int c = 0; c < n; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
            }
            nrm[i] = 0;
            for (int c = 0; c < n; ++c) nrm[i] += bs[i][c] * bs[i][c];
        }
        for (int i = 1; i < n; ++i) {
            for (int j = 0; j < i; ++j) CHECK(abs(mu[i][j]) <= Rat(1, 2));
            CHECK(nrm[i] >= (Rat(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * nrm[i - 1]);
        }
    }
}

TEST_CASE("kernel mod q")
{
    ModMatrix a{{1, 2, 3}, {2, 4, 6}};
    auto k = kernel_mod(a, 3, 7);
    CHECK(k.size() == 2);
    for (auto& v : k)
        for (auto& row : a) {
            std::uint64_t s = 0;
            for (int j = 0; j < 3; ++j) s += row[j] * v[j];
            CHECK(s % 7 == 0);
        }
    CHECK(rank_mod(a, 7) == 1);
}

TEST_CASE("ball arithmetic encloses exact values")
{
    Ball c = Ball::cos_2pi(1, 7, 128) + Ball::cos_2pi(6, 7, 128);
    // 2cos(2pi/7) is a root of x^3 + x^2 - 2x - 1
    Ball x = c;
    Ball v = x * x * x + x * x - Ball(2, 128) * x - Ball(1, 128);
    CHECK(v.contains_zero());
    CHECK(v.radius_double() < 1e-30);
    Ball s = Ball::sin_2pi(1, 12, 128);
    CHECK((s - Ball(mpq_class(1, 2), 128)).contains_zero());
    Ball l = log(exp(Ball(3, 128)));
    CHECK(l.overlaps(Ball(3, 128)));
    CHECK(sqrt(Ball(49, 128)).unique_integer() == Int(7));
    CHECK_FALSE(Ball::from_dyadic_interval(Int(1), 2, 64).unique_integer().has_value());
    CHECK(Ball(1, 64).certainly_less(Ball(2, 64)));
    CHECK_THROWS_AS(Ball(1, 64) / Ball(0, 64), std::domain_error);
}
