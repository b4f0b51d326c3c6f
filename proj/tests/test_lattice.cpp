#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/errors.hpp"
#include "eucl/lattice.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace eucl;

namespace {

// brute force over a coordinate box of the ideal basis
std::set<Elt> brute_force(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& v, long double bound,
                          long box)
{
    const int n = o.degree();
    auto basis = ideal_basis(a);
    std::set<Elt> out;
    std::vector<long> x(n, -box);
    while (true) {
        Elt y(n, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) y[k] += x[i] * basis[i][k];
        if (!o.is_zero(y)) {
            auto e = o.embed_ld(y);
            long double s = 0;
            for (int k = 0; k < n; ++k) s += std::pow(e[k] * std::exp(-(v.empty() ? 0 : v[k])), 2);
            if (s <= bound) {
                for (const auto& c : y)
                    if (c != 0) {
                        if (c < 0)
                            for (auto& d : y) d = -d;
                        break;
                    }
                out.insert(y);
            }
        }
        int i = 0;
        while (i < n && x[i] == box) x[i++] = -box;
        if (i == n) break;
        ++x[i];
    }
    return out;
}

// sup of |coordinate| over the ellipsoid sum sigma_k(x)^2 w_k^2 <= bound
long coordinate_box(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& v, long double bound)
{
    const int n = o.degree();
    auto basis = ideal_basis(a);
    // rows: weighted embeddings of basis elements; x = y E^{-1}
    std::vector<std::vector<long double>> e;
    for (const auto& b : basis) {
        auto r = o.embed_ld(b);
        for (int k = 0; k < n; ++k) r[k] *= std::exp(-(v.empty() ? 0 : v[k]));
        e.push_back(r);
    }
    // invert by Gauss-Jordan
    std::vector<std::vector<long double>> inv(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c; r < n; ++r)
            if (std::fabs(e[r][c]) > std::fabs(e[p][c])) p = r;
        std::swap(e[p], e[c]);
        std::swap(inv[p], inv[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            long double f = e[r][c] / e[c][c];
            for (int k = 0; k < n; ++k) {
                e[r][k] -= f * e[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    long double worst = 0;
    for (int j = 0; j < n; ++j) {
        long double s = 0;
        for (int k = 0; k < n; ++k) s += std::pow(inv[j][k] / e[j][j], 2);
        worst = std::max(worst, std::sqrt(s));
    }
    return static_cast<long>(std::ceil(worst * std::sqrt(bound))) + 1;
}

}  // namespace

TEST_CASE("fincke_pohst agrees with box enumeration")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        // G = B B^T for a random nonsingular integer B
        const long double bound = 40;
        const long box = 60;
        std::vector<std::vector<long>> b(3, std::vector<long>(3));
        while (true) {
            for (auto& r : b)
                for (auto& c : r) c = d(rng);
            long det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                       b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                       b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
            if (det == 0) continue;
            // x = y B^{-1}: |x_j| <= sqrt(bound) * |column j of adj(B)| / |det|
            long double worst = 0;
            for (int j = 0; j < 3; ++j) {
                long double s = 0;
                for (int k = 0; k < 3; ++k) {
                    int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (k + 1) % 3, c1 = (k + 2) % 3;
                    long cof = b[r0][c0] * b[r1][c1] - b[r0][c1] * b[r1][c0];
                    s += static_cast<long double>(cof) * cof;
                }
                worst = std::max(worst, std::sqrt(s) / std::labs(det));
            }
            if (worst * std::sqrt(bound) < box) break;
        }
        std::vector<std::vector<long double>> g(3, std::vector<long double>(3, 0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) g[i][j] += b[i][k] * b[j][k];
        auto got = fincke_pohst(g, bound, 1'000'000);
        std::set<std::vector<long>> want;
        for (long x0 = -box; x0 <= box; ++x0)
            for (long x1 = -box; x1 <= box; ++x1)
                for (long x2 = -box; x2 <= box; ++x2) {
                    long y[3];
                    for (int k = 0; k < 3; ++k) y[k] = x0 * b[0][k] + x1 * b[1][k] + x2 * b[2][k];
                    long q = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
                    if (q == 0 || q > bound) continue;
                    bool pos = x2 > 0 || (x2 == 0 && (x1 > 0 || (x1 == 0 && x0 > 0)));
                    if (pos) want.insert({x0, x1, x2});
                }
        CHECK(std::set<std::vector<long>>(got.begin(), got.end()) == want);
        CHECK(got.size() == want.size());
    }
}

TEST_CASE("fincke_pohst node cap")
{
    std::vector<std::vector<long double>> g{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(fincke_pohst(g, 1e6, 1000), ResourceError);
}

TEST_CASE("short elements of the whole ring of the conductor-7 field")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-2x+1"));
    auto one = short_elements(*o, unit_ideal(*o), 3.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == o->one());
    // T2 >= 3 |N|^(2/3) >= 3 for nonzero integers
    CHECK(short_elements(*o, unit_ideal(*o), 2.999).empty());
    CHECK_THROWS_AS(short_elements(*o, unit_ideal(*o), 0), std::invalid_argument);
}

TEST_CASE("short elements match brute force, with membership and certified T2")
{
    for (const char* f : {"x^3-x^2-2x+1", "x^3-x^2-30x-27", "x^3-x^2-10x+8"}) {
        auto o = maximal_order(IntPoly::parse(f));
        std::vector<Ideal> ideals{unit_ideal(*o)};
        for (long q : {2, 3, 13})
            for (const auto& p : factor_rational_prime(*o, q)) ideals.push_back(p.ideal);
        for (const auto& a : ideals) {
            const long double bound = 3 * std::pow(static_cast<long double>(ideal_norm(a).get_d()), 2.0L / 3) * 6;
            auto got = short_elements(*o, a, bound);
            std::set<Elt> got_set(got.begin(), got.end());
            CHECK(got_set.size() == got.size());
            for (const auto& x : got) {
                CHECK(ideal_contains(a, x));
                Int t = t2_norm(*o, x);
                CHECK(t <= Int(static_cast<double>(std::floor(bound))));
                Ball s(0, 128);
                for (const auto& e : o->embed(x, 128)) s += e * e;
                CHECK(s.overlaps(Ball(t, 128)));
            }
            long box = coordinate_box(*o, a, {}, bound);
            CAPTURE(f);
            CAPTURE(box);
            REQUIRE(box <= 40);
            CHECK(brute_force(*o, a, {}, bound, box) == got_set);
        }
    }
}

TEST_CASE("weighted enumeration covers the weighted ellipsoid")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-30x-27"));
    const std::vector<std::vector<long double>> scales{{0, 0, 0}, {1, -0.5L, -0.5L}, {-1.25L, 2, -0.75L}};
    for (const auto& v : scales) {
        for (const auto& p : factor_rational_prime(*o, 2)) {
            const long double bound = 30;
            auto got = weighted_short_elements(*o, p.ideal, v, bound);
            std::set<Elt> got_set(got.begin(), got.end());
            auto want = brute_force(*o, p.ideal, v, bound, coordinate_box(*o, p.ideal, v, bound));
            for (const auto& w : want) CHECK(got_set.count(w) == 1);
            // extras only within the padding
            for (const auto& x : got) {
                auto e = o->embed_ld(x);
                long double s = 0;
                for (int k = 0; k < 3; ++k) s += std::pow(e[k] * std::exp(-v[k]), 2);
                CHECK(s <= bound * (1 + 1e-6L));
            }
        }
    }
}

TEST_CASE("reduced basis spans the ideal")
{
    auto o = maximal_order(IntPoly::parse("x^3-x^2-72x-209"));
    for (const auto& p : factor_rational_prime(*o, 3)) {
        auto red = reduced_ideal_basis(*o, p.ideal, {2, -1, -1});
        CHECK(ideal_from_generators(*o, red) == p.ideal);
    }
}
