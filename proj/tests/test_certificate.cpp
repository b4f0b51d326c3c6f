#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eucl/certificate.hpp"
#include "eucl/errors.hpp"

#include <deque>
#include <map>
#include <numeric>

using namespace eucl;

namespace {

AbelianFieldSpec field_of(const char* poly, u64 conductor)
{
    auto cands = enumerate_prime_degree_subfields(conductor, 3);
    auto s = identify_field(IntPoly::parse(poly), cands);
    REQUIRE(s.has_value());
    return *s;
}

const FieldAnalysis& analysis(const AbelianFieldSpec& spec)
{
    static std::deque<FieldAnalysis> cache;
    for (const auto& a : cache)
        if (same_field(a.spec, spec)) return a;
    cache.push_back(analyze_field(spec));
    return cache.back();
}

PairContext context(const AbelianFieldSpec& k1, const AbelianFieldSpec& k2)
{
    return build_pair_context(k1, k2, analysis(k1).class_group, analysis(k2).class_group);
}

struct Fields {
    AbelianFieldSpec k217 = field_of("x^3-x^2-72x-209", 217);
    AbelianFieldSpec k247 = field_of("x^3-x^2-82x+64", 247);
    AbelianFieldSpec k7 = field_of("x^3-x^2-2x+1", 7);
    AbelianFieldSpec k13 = field_of("x^3-x^2-4x-1", 13);
    AbelianFieldSpec k91a = field_of("x^3-x^2-30x-27", 91);
    AbelianFieldSpec k91b = field_of("x^3-x^2-30x+64", 91);
};

// brute-force order of x modulo the subgroup, from the element lists
u64 order_by_powers(u64 x, const SubgroupModN& h)
{
    u64 y = x % h.modulus();
    for (u64 k = 1;; ++k) {
        if (h.contains(y)) return k;
        y = zmod::mulmod(y, x, h.modulus());
    }
}

}  // namespace

TEST_CASE_FIXTURE(Fields, "pair context")
{
    auto big = context(k217, k247);
    CHECK(big.f1 == 217);
    CHECK(big.f2 == 247);
    CHECK(big.f == 857584);
    CHECK(big.f == std::lcm(std::lcm<u64>(16, 217), 247));
    CHECK(big.G.size() == zmod::euler_phi(big.f) / 9);
    CHECK(big.G.size() == 3 * big.Hprime.size());
    CHECK(big.G.size() == 3 * big.Hdoubleprime.size());
    CHECK(big.H_K1.degree == 9);

    auto small = context(k7, k13);
    CHECK(small.f == 1456);
    CHECK(small.Hprime == small.G);
    CHECK(small.Hdoubleprime == small.G);
    // G is the fixing group of the compositum at level f
    CHECK(small.G == zmod::lift(at_level(compositum(k7, k13), 1456).fixing, 1456));

    // a non-certified input is refused
    ClassGroupResult fake = analysis(k91a).class_group;
    fake.class_number = 9;
    CHECK_THROWS_AS(build_pair_context(k91a, k7, fake, analysis(k7).class_group), std::invalid_argument);
    fake = analysis(k91a).class_group;
    fake.is_cyclic = false;
    CHECK_THROWS_AS(build_pair_context(k91a, k7, fake, analysis(k7).class_group), std::invalid_argument);
}

TEST_CASE_FIXTURE(Fields, "relative ramification")
{
    CHECK(is_relatively_ramified(k217, k247, 1));
    CHECK(is_relatively_ramified(k217, k247, 2));
    CHECK_FALSE(is_relatively_ramified(k91a, k7, 1));
    CHECK(is_relatively_ramified(k91a, k7, 2));
    CHECK_FALSE(is_relatively_ramified(k91a, k91b, 1));
    CHECK_FALSE(is_relatively_ramified(k91a, k91b, 2));
    CHECK(is_relatively_ramified(k7, k13, 1));
    // oracle: relative ramification <=> [K1K2 : K_i] exceeds the degree of the
    // maximal subextension unramified over K_i, i.e. K1K2 not inside the genus field
    for (auto [a, b] : std::vector<std::pair<AbelianFieldSpec, AbelianFieldSpec>>{
             {k217, k247}, {k91a, k7}, {k91a, k91b}, {k7, k13}, {k91a, k13}}) {
        auto c = compositum(a, b);
        CHECK(is_relatively_ramified(a, b, 1) == !is_subfield(c, genus_field(a)));
        CHECK(is_relatively_ramified(a, b, 2) == !is_subfield(c, genus_field(b)));
    }
}

TEST_CASE_FIXTURE(Fields, "residue class for class number one pair")
{
    auto ctx = context(k7, k13);
    auto cert = choose_residue_class(ctx);
    CHECK(cert.d == 1455);
    CHECK(cert.u1 == 1455);
    CHECK(std::gcd<u64>(727, 1456) == 1);
    CHECK(cert.checks.all());
    CHECK(verify_certificate(ctx, cert) == cert.checks);
}

TEST_CASE_FIXTURE(Fields, "residue class for the 217/247 pair")
{
    auto ctx = context(k217, k247);
    auto cert = choose_residue_class(ctx);
    CHECK(cert.f == 857584);
    CHECK(cert.checks.all());
    CHECK(cert.d % 2 == 1);
    CHECK(cert.d % 4 == 3);
    CHECK(verify_certificate(ctx, cert).all());
    // generators of both quotients, from the materialized subgroups
    CHECK(ctx.G.contains(cert.d));
    CHECK(order_by_powers(cert.d, ctx.Hprime) == 3);
    CHECK(order_by_powers(cert.d, ctx.Hdoubleprime) == 3);
    // -1 lies in <d>: d has order 2 * odd
    u64 ord = zmod::element_order(cert.d, ctx.f);
    CHECK(ord % 2 == 0);
    CHECK((ord / 2) % 2 == 1);
    CHECK(zmod::powmod(cert.d, ord / 2, ctx.f) == ctx.f - 1);

    // every prime = u1 mod f splits completely in K1K2 (first 25)
    auto k = compositum(k217, k247);
    int seen = 0;
    for (u64 p = cert.u1; seen < 25; p += ctx.f) {
        if (!zmod::is_prime(p)) continue;
        ++seen;
        CHECK(frobenius_class(k, p).is_identity);
        CHECK(frobenius_class(k217, p).is_identity);
    }

    // d = 1 fails generation and gcd; d = f - 1 fails generation here
    ResidueClassCertificate one{ctx.f, 1, 1, {}};
    auto c1 = verify_certificate(ctx, one);
    CHECK(c1.in_G);
    CHECK_FALSE(c1.generates_C1);
    CHECK_FALSE(c1.generates_C2);
    CHECK_FALSE(c1.gcd_condition);
    ResidueClassCertificate minus{ctx.f, ctx.f - 1, ctx.f - 1, {}};
    auto cm = verify_certificate(ctx, minus);
    CHECK(cm.in_G);
    CHECK(cm.gcd_condition);
    CHECK(cm.generates_C1 == (order_by_powers(ctx.f - 1, ctx.Hprime) == 3));
    CHECK_FALSE(cm.generates_C1);
}

TEST_CASE("odd-order stripping gives -1 in the cyclic group")
{
    const u64 f = 1456;
    for (u64 c = 3; c < f; c += 2) {
        if (std::gcd(c, f) != 1) continue;
        u64 s = zmod::strip_two_part(c, f);
        u64 n = zmod::element_order(s, f);
        CHECK(n % 2 == 1);
        CHECK(zmod::powmod(f - s, n, f) == f - 1);
    }
}

TEST_CASE_FIXTURE(Fields, "qualify pairs")
{
    auto q = qualify_pair(analysis(k217), analysis(k247));
    CHECK(q.conclusion == Outcome::qualified);
    CHECK(q.statement == kConclusionStatement);
    REQUIRE(q.certificate.has_value());
    CHECK(q.certificate->checks.all());
    CHECK(q.hcf_abelian[0] == HcfStatus::certified);

    auto small = qualify_pair(analysis(k7), analysis(k13));
    CHECK(small.conclusion == Outcome::qualified);
    REQUIRE(small.certificate.has_value());
    CHECK(small.certificate->d == 1455);
    CHECK(small.hcf_abelian[0] == HcfStatus::trivial);

    auto neg = qualify_pair(analysis(k91a), analysis(k7));
    CHECK(neg.conclusion == Outcome::rejected);
    CHECK(neg.reasons == std::vector<std::string>{"not relatively ramified"});
    CHECK_FALSE(neg.relatively_ramified[0]);
    CHECK(neg.relatively_ramified[1]);
    CHECK_FALSE(neg.certificate.has_value());

    auto same = qualify_pair(k7, k7);
    CHECK(same.conclusion == Outcome::rejected);
    CHECK_FALSE(same.distinct);

    auto quad = qualify_pair(AbelianFieldSpec::from_generators(5, std::vector<u64>{4}), k7);
    CHECK(quad.conclusion == Outcome::rejected);
    CHECK_FALSE(quad.degrees_odd_prime);

    // resource failure is undecided, not rejected
    ClassGroupConfig tiny;
    tiny.max_nodes = 3;
    auto und = qualify_pair(k217, k247, tiny);
    CHECK(und.conclusion == Outcome::undecided);

    // symmetry over pairs from conductors <= 250
    std::vector<AbelianFieldSpec> fields;
    for (u64 n : {7, 9, 13, 19, 63, 91, 117, 133, 247})
        for (const auto& s : enumerate_prime_degree_subfields(n, 3))
            if (s.level == n) fields.push_back(s);
    int qualified = 0;
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            auto a = qualify_pair(analysis(fields[i]), analysis(fields[j]));
            auto b = qualify_pair(analysis(fields[j]), analysis(fields[i]));
            CAPTURE(fields[i].level);
            CAPTURE(fields[j].level);
            CHECK(a.conclusion == b.conclusion);
            CHECK(a.reasons == b.reasons);
            if (a.conclusion != Outcome::qualified) continue;
            ++qualified;
            REQUIRE(a.certificate.has_value());
            CHECK(a.certificate->d % 4 == 3);
            auto ctx = context(fields[i], fields[j]);
            CHECK(verify_certificate(ctx, *a.certificate).all());
            if (ctx.h1 > 1 && ctx.h2 > 1) {
                CHECK(order_by_powers(a.certificate->d, ctx.Hprime) == static_cast<u64>(ctx.h1));
                CHECK(order_by_powers(a.certificate->d, ctx.Hdoubleprime) == static_cast<u64>(ctx.h2));
            }
        }
    CHECK(qualified > 10);
}

TEST_CASE("corollary driver")
{
    CHECK_THROWS_WITH_AS(corollary_driver(7, 13, 7, 19), "primes not distinct", std::invalid_argument);
    CHECK_THROWS_WITH_AS(corollary_driver(7, 13, 19, 23), "23 is not 1 mod 3", std::invalid_argument);
    CHECK_THROWS_AS(corollary_driver(7, 13, 19, 25), std::invalid_argument);

    auto r = corollary_driver(7, 31, 13, 19);
    CHECK(r.admissible[0].size() >= 4);
    bool found = false;
    for (const auto& q : r.pairs) {
        CHECK(q.conclusion == Outcome::qualified);
        if (q.fields[0].conductor == 217 && q.fields[1].conductor == 247 && q.fields[0].class_number == 3 &&
            q.fields[1].class_number == 3)
            found = true;
    }
    CHECK(found);
}

TEST_CASE("table reproduction")
{
    auto rows = reproduce_tables({{7, 13}, {13, 19}, {7, 19}});
    REQUIRE(rows.size() == 12);
    std::map<std::pair<int, int>, long> h_of_ref;
    for (const auto& r : rows) {
        for (auto ref : r.references) h_of_ref[ref] = r.field.class_number;
        if (r.field.class_number == 3) {
            CHECK(r.field.conductor == r.p * r.q);
            CHECK(r.hcf_abelian == HcfStatus::certified);
        }
    }
    for (const auto& ref : reference_rows()) {
        bool in_scope = (ref.p == 7 && (ref.q == 13 || ref.q == 19)) || (ref.p == 13 && ref.q == 19);
        if (!in_scope) continue;
        CAPTURE(ref.polynomial);
        REQUIRE(h_of_ref.count({ref.table, ref.serial}) == 1);
        CHECK(h_of_ref[{ref.table, ref.serial}] == ref.class_number);
    }
    // the conductor-7 field is the same row across pairs
    CHECK(rows[0].field.conductor == 7);
    CHECK(rows[0].references == std::vector<std::pair<int, int>>{{1, 1}});
}
