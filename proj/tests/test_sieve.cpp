#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/certificate.hpp"
#include "eucl/errors.hpp"
#include "eucl/sieve.hpp"

#include <cmath>
#include <set>

using namespace eucl;

namespace {

AbelianFieldSpec field_of(const char* poly, u64 conductor)
{
    auto cands = enumerate_prime_degree_subfields(conductor, 3);
    auto s = identify_field(IntPoly::parse(poly), cands);
    REQUIRE(s.has_value());
    return *s;
}

struct Pair {
    FieldAnalysis a7 = analyze_field(field_of("x^3-x^2-2x+1", 7));
    FieldAnalysis a13 = analyze_field(field_of("x^3-x^2-4x-1", 13));
    AbelianFieldSpec k = compositum(a7.spec, a13.spec);
    std::vector<SieveUnit> units{{a7.order, a7.class_group.units.units.at(0)},
                                 {a7.order, a7.class_group.units.units.at(1)},
                                 {a13.order, a13.class_group.units.units.at(0)}};
    SieveParams params{1455, 1456, 0.30, 0.45, default_epsilon(0.45), 1'000'000};
};

// trial-division factorization as an independent oracle
std::vector<u64> prime_factors_with_mult(u64 n)
{
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            out.push_back(d);
            n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

bool naive_prime(u64 n)
{
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Legendre symbol by Euler's criterion
int euler_symbol(u64 a, u64 p)
{
    u64 t = zmod::powmod(a % p, (p - 1) / 2, p);
    return t == 1 ? 1 : (t == 0 ? 0 : -1);
}

}  // namespace

TEST_CASE("parameters")
{
    CHECK(default_epsilon(0.45) == doctest::Approx(0.099));
    SieveParams ok{1455, 1456, 0.30, 0.45, default_epsilon(0.45), 1000};
    CHECK_NOTHROW(validate(ok));
    CHECK(ok.b / (1 - ok.epsilon) < 0.5);
    auto bad = ok;
    bad.f = 728;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.u1 = 1457;  // (u1 - 1)/2 = 728
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.epsilon = 0.2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    bad = ok;
    bad.a = 0.2;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("progression primes against trial division")
{
    for (auto [u, v, lo, hi] : std::vector<std::array<u64, 4>>{
             {3, 4, 1, 100}, {1455, 1456, 1, 200000}, {5, 16, 1000, 5000}, {1, 2, 1, 3000}, {7, 30, 2'090'000, 2'110'000}}) {
        std::vector<u64> want;
        for (u64 p = std::max<u64>(lo, 2); p <= hi; ++p)
            if (p % v == u % v && naive_prime(p)) want.push_back(p);
        CHECK(progression_primes(u, v, lo, hi) == want);
    }
    // segment boundary at 2^20
    const u64 edge = u64{1} << 20;
    std::vector<u64> want;
    for (u64 p = edge - 100; p <= edge + 100; ++p)
        if (p % 2 == 1 && naive_prime(p)) want.push_back(p);
    CHECK(progression_primes(1, 2, edge - 100, edge + 100) == want);
}

TEST_CASE("safe prime analog")
{
    std::vector<u64> got;
    for (u64 p : progression_primes(3, 4, 1, 100)) {
        auto r = classify_half(p, 0, 0, true);
        if (r && r->half_type == HalfType::prime) got.push_back(p);
    }
    CHECK(got == std::vector<u64>{7, 11, 23, 47, 59, 83});

    // u = 3, v = 16 at X = 10^4: positive count and ratio
    u64 count = 0;
    for (u64 p : progression_primes(3, 16, 1, 10000))
        if (p > 3 && naive_prime((p - 1) / 2)) ++count;
    CHECK(count > 0);
    CHECK(density_ratio(count, 10000) > 0);
    CHECK(density_ratio(0, 10000) == 0);
    CHECK_THROWS_AS(density_ratio(1, 50), std::invalid_argument);
}

TEST_CASE("Heath-Brown set labels")
{
    SieveParams s{1455, 1456, 0.30, 0.45, default_epsilon(0.45), 3'000'000};
    auto recs = heath_brown_set(s);
    CHECK(!recs.empty());
    const double X = static_cast<double>(s.X);
    std::set<u64> seen;
    for (const auto& r : recs) {
        CAPTURE(r.p);
        CHECK(seen.insert(r.p).second);
        CHECK(r.p % s.f == s.u1);
        CHECK(naive_prime(r.p));
        CHECK(static_cast<double>(r.p) > std::pow(X, 1 - s.epsilon));
        CHECK(r.p < s.X);
        auto fs = prime_factors_with_mult((r.p - 1) / 2);
        if (r.half_type == HalfType::prime) {
            CHECK(fs.size() == 1);
        } else {
            REQUIRE(fs.size() == 2);
            CHECK(fs[0] == r.q1);
            CHECK(fs[1] == r.q2);
            CHECK(static_cast<double>(r.q1) >= std::pow(X, s.a));
            CHECK(static_cast<double>(r.q1) <= std::pow(X, s.b));
        }
    }
    // completeness over the same range by brute force
    u64 brute = 0;
    for (u64 p = s.u1; p < s.X; p += s.f) {
        if (static_cast<double>(p) <= std::pow(X, 1 - s.epsilon) || !naive_prime(p)) continue;
        auto fs = prime_factors_with_mult((p - 1) / 2);
        if (fs.size() == 1 ||
            (fs.size() == 2 && fs[0] >= std::pow(X, s.a) && static_cast<double>(fs[0]) <= std::pow(X, s.b)))
            ++brute;
    }
    CHECK(recs.size() == brute);
}

TEST_CASE_FIXTURE(Pair, "M set, signatures and partition")
{
    auto m = m_epsilon_set(k, params);
    CHECK(!m.empty());
    auto prog = progression_primes(params.u1, params.f, 2, params.X);
    CHECK(m.size() <= prog.size());
    for (const auto& r : m) {
        CAPTURE(r.p);
        CHECK(r.p % params.f == params.u1);
        CHECK(frobenius_class(k, r.p).is_identity);
        CHECK(euler_symbol(r.p - 1, r.p) == -1);
        const double lp = static_cast<double>(r.p);
        if (r.half_type == HalfType::semiprime) {
            CHECK(static_cast<double>(r.q1) > std::pow(lp, params.a));
            CHECK(static_cast<double>(r.q1) < std::pow(lp, params.b / (1 - params.epsilon)));
            CHECK(r.q1 * r.q2 == (r.p - 1) / 2);
        }
    }

    // symbols of 1 and of squares
    auto one = std::vector<SieveUnit>{{a7.order, a7.order->one()}};
    auto sq = std::vector<SieveUnit>{{a7.order, a7.order->mul(units[0].value, units[0].value)},
                                     {a13.order, a13.order->mul(units[2].value, units[2].value)}};
    for (const auto& r : m) {
        CHECK(residue_signature(r.p, one) == std::vector<int>{1});
        CHECK(residue_signature(r.p, sq) == std::vector<int>{1, 1});
    }

    // other roots: symbols never vanish, and Euler's criterion agrees at the smallest root
    int checked = 0;
    for (u64 p : prog) {
        if (checked == 100) break;
        ++checked;
        auto sig = residue_signature(p, units);
        for (std::size_t i = 0; i < units.size(); ++i) {
            auto roots = roots_mod(units[i].order->polynomial(), p);
            REQUIRE(roots.size() == 3);
            auto c = units[i].order->to_power_basis(units[i].value);
            for (u64 root : roots) {
                Int v = 0, rp = 1;
                for (const auto& q : c) {
                    REQUIRE(q.get_den() == 1);
                    v += q.get_num() * rp;
                    rp *= static_cast<unsigned long>(root);
                }
                v %= static_cast<unsigned long>(p);
                if (v < 0) v += static_cast<unsigned long>(p);
                int s = euler_symbol(v.get_ui(), p);
                CHECK(s != 0);
                if (root == roots.front()) CHECK(s == sig[i]);
            }
        }
    }

    for (auto& r : m) r.signature = residue_signature(r.p, units);
    auto part = partition_m(m);
    u64 total = 0;
    for (u64 c : part.counts) total += c;
    CHECK(total == m.size());
    // re-bucket from the signatures
    std::array<u64, 8> again{};
    for (const auto& r : m) {
        int n = 1 + (r.signature[0] == 1 ? 1 : 0) + (r.signature[1] == 1 ? 2 : 0) + (r.signature[2] == 1 ? 4 : 0);
        CHECK(n == r.cell);
        ++again[n - 1];
    }
    CHECK(again == part.counts);
    for (int n = 1; n <= 8; ++n) CHECK(part.counts[part.dominant - 1] >= part.counts[n - 1]);

    // identical signatures land in one cell
    std::vector<SieveRecord> same(5);
    for (auto& r : same) r.signature = {-1, 1, -1};
    auto p1 = partition_m(same);
    CHECK(p1.counts[partition_cell({-1, 1, -1}) - 1] == 5);
    CHECK(partition_cell({-1, -1, -1}) == 1);
    CHECK(partition_cell({1, 1, 1}) == 8);
}

TEST_CASE_FIXTURE(Pair, "primitive roots")
{
    CHECK(is_primitive_root(3, 7));
    CHECK_FALSE(is_primitive_root(2, 7));
    CHECK(zmod::element_order(3, 7) == 6);

    auto rep = run_sieve(params, k, units);
    CHECK(rep.M_count == rep.records.size());
    CHECK(rep.primitive_root_count > 0);
    u64 winners = 0;
    for (const auto& r : rep.records) {
        if (!r.winner_index) continue;
        ++winners;
        CAPTURE(r.p);
        CHECK(is_primitive_root(r.winner, r.p));
        CHECK(zmod::powmod(r.winner, (r.p - 1) / 2, r.p) == r.p - 1);
        for (u64 l : prime_factors_with_mult(r.p - 1))
            if (l != 2) CHECK(zmod::powmod(r.winner, (r.p - 1) / l, r.p) != 1);
        // the winner is +-eps_i reduced mod p
        auto sig = residue_signature(r.p, {units[r.winner_index - 1]});
        CHECK(euler_symbol(r.winner, r.p) == -1);
        CHECK(sig.size() == 1);
    }
    CHECK(winners == rep.primitive_root_count);
    CHECK(rep.M_density > 0);

    auto ladder = density_ladder(rep, 125'000);
    REQUIRE(ladder.size() == 4);
    CHECK(ladder.back().X == 1'000'000);
    CHECK(ladder.back().M_count == rep.M_count);
    for (std::size_t i = 1; i < ladder.size(); ++i) CHECK(ladder[i].M_count >= ladder[i - 1].M_count);

    auto csv = sieve_csv(rep);
    CHECK(csv.rfind("p,half_type,q1,sig1,sig2,sig3,winner\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep.records.size()) + 1);
    CHECK(sieve_csv(run_sieve(params, k, units)) == csv);
}
