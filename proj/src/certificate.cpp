#include "eucl/certificate.hpp"

#include "eucl/descriptor.hpp"
#include "eucl/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eucl {

namespace {

bool odd_prime(u64 p)
{
    return p > 2 && zmod::is_prime(p);
}

FieldSummary summarize(const AbelianFieldSpec& spec)
{
    FieldSummary s;
    s.descriptor = field_descriptor(spec);
    s.conductor = conductor(spec);
    s.degree = spec.degree;
    s.polynomial = defining_polynomial(spec).to_string();
    return s;
}

FieldSummary summarize(const FieldAnalysis& a)
{
    FieldSummary s;
    s.descriptor = field_descriptor(a.spec);
    s.conductor = a.spec.level;
    s.degree = a.spec.degree;
    s.polynomial = a.polynomial.to_string();
    s.class_number = a.class_group.class_number;
    s.genus_number = a.genus.genus_number;
    return s;
}

void add_reason(std::vector<std::string>& reasons, const std::string& r)
{
    if (std::find(reasons.begin(), reasons.end(), r) == reasons.end()) reasons.push_back(r);
}

// x in the fixing group of spec, read off at the spec's own level
bool fixes(const AbelianFieldSpec& spec, u64 x)
{
    return spec.fixing.contains(x % spec.level);
}

// order of x modulo the subgroup given by a membership test is exactly h
bool has_order_mod(u64 x, u64 f, long h, const auto& member)
{
    const u64 hh = static_cast<u64>(h);
    if (!member(zmod::powmod(x, hh, f))) return false;
    for (u64 r : zmod::factorize(hh).primes())
        if (member(zmod::powmod(x, hh / r, f))) return false;
    return true;
}

}  // namespace

FieldAnalysis analyze_field(const AbelianFieldSpec& spec, const ClassGroupConfig& cfg)
{
    FieldAnalysis a;
    a.spec = at_conductor(spec);
    a.polynomial = defining_polynomial(a.spec);
    a.order = maximal_order(a.polynomial);
    a.class_group = class_group(*a.order, cfg);
    a.genus = hcf_abelian_certificate(a.spec, a.class_group);
    return a;
}

AbelianFieldSpec hilbert_class_field(const AbelianFieldSpec& spec, const ClassGroupResult& cg)
{
    auto cert = hcf_abelian_certificate(spec, cg);
    switch (cert.hcf_abelian) {
    case HcfStatus::trivial:
        return at_conductor(spec);
    case HcfStatus::certified:
        return at_conductor(genus_field(spec));
    default:
        throw std::invalid_argument("Hilbert class field not certified abelian");
    }
}

PairContext build_pair_context(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2, const ClassGroupResult& cg1,
                               const ClassGroupResult& cg2)
{
    if (!cg1.is_cyclic || !cg2.is_cyclic) throw std::invalid_argument("class group not cyclic");
    PairContext ctx;
    ctx.K1 = at_conductor(K1);
    ctx.K2 = at_conductor(K2);
    ctx.H_K1 = hilbert_class_field(ctx.K1, cg1);
    ctx.H_K2 = hilbert_class_field(ctx.K2, cg2);
    ctx.h1 = cg1.class_number;
    ctx.h2 = cg2.class_number;
    ctx.f1 = ctx.H_K1.level;
    ctx.f2 = ctx.H_K2.level;
    ctx.f = std::lcm(std::lcm<u64>(16, ctx.f1), ctx.f2);
    ctx.G = zmod::intersect(zmod::lift(ctx.K1.fixing, ctx.f), zmod::lift(ctx.K2.fixing, ctx.f));
    ctx.H1 = zmod::lift(ctx.H_K1.fixing, ctx.f);
    ctx.H2 = zmod::lift(ctx.H_K2.fixing, ctx.f);
    ctx.Hprime = zmod::intersect(ctx.G, ctx.H1);
    ctx.Hdoubleprime = zmod::intersect(ctx.G, ctx.H2);
    if (ctx.G.size() != static_cast<std::size_t>(ctx.h1) * ctx.Hprime.size() ||
        ctx.G.size() != static_cast<std::size_t>(ctx.h2) * ctx.Hdoubleprime.size())
        throw InconsistencyError("build_pair_context: quotient orders differ from the class numbers");
    return ctx;
}

bool is_relatively_ramified(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2, int i)
{
    if (i != 1 && i != 2) throw std::invalid_argument("is_relatively_ramified: i must be 1 or 2");
    const auto& Ki = i == 1 ? K1 : K2;
    auto k = compositum(K1, K2);
    for (u64 q : zmod::factorize(conductor(k)).primes())
        if (ramification_index(k, q) != ramification_index(Ki, q)) return true;
    return false;
}

bool is_relatively_ramified(const PairContext& ctx, int i)
{
    return is_relatively_ramified(ctx.K1, ctx.K2, i);
}

ResidueClassCertificate choose_residue_class(const PairContext& ctx)
{
    ResidueClassCertificate cert;
    cert.f = ctx.f;
    if (ctx.h1 == 1 && ctx.h2 == 1) {
        cert.d = ctx.f - 1;
    } else {
        std::optional<u64> hit;
        for (u64 c : ctx.G.elements()) {
            if (ctx.h1 > 1 && zmod::order_modulo(c, ctx.Hprime) != static_cast<u64>(ctx.h1)) continue;
            if (ctx.h2 > 1 && zmod::order_modulo(c, ctx.Hdoubleprime) != static_cast<u64>(ctx.h2)) continue;
            hit = c;
            break;
        }
        if (!hit) throw InconsistencyError("no simultaneous generator");
        u64 c = zmod::strip_two_part(*hit, ctx.f);
        cert.d = ctx.f - c;
    }
    cert.u1 = cert.d;
    cert.checks = verify_certificate(ctx, cert);
    if (!cert.checks.all()) throw InconsistencyError("choose_residue_class: certificate fails verification");
    return cert;
}

CertificateChecks verify_certificate(const PairContext& ctx, const ResidueClassCertificate& cert)
{
    CertificateChecks out;
    const u64 f = ctx.f;
    const u64 d = cert.d % f;
    if (std::gcd(d, f) != 1) return out;
    auto in_G = [&](u64 x) { return fixes(ctx.K1, x) && fixes(ctx.K2, x); };
    out.in_G = in_G(d);
    out.generates_C1 = out.in_G && has_order_mod(d, f, ctx.h1, [&](u64 x) { return in_G(x) && fixes(ctx.H_K1, x); });
    out.generates_C2 = out.in_G && has_order_mod(d, f, ctx.h2, [&](u64 x) { return in_G(x) && fixes(ctx.H_K2, x); });
    // d is odd since f is even; (d - 1)/2 with d taken in [1, f)
    out.gcd_condition = std::gcd((d - 1) / 2, f) == 1;
    bool alt = d % 4 != 1;
    for (u64 l : zmod::factorize(f).primes())
        if (l != 2 && d % l == 1) alt = false;
    if (alt != out.gcd_condition) throw InconsistencyError("verify_certificate: gcd condition forms disagree");
    return out;
}

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::qualified:
        return "qualified";
    case Outcome::rejected:
        return "rejected";
    default:
        return "undecided";
    }
}

namespace {

// distinctness and degree checks; false when the report is already final
bool precheck(QualificationReport& r, const AbelianFieldSpec& K1, const AbelianFieldSpec& K2)
{
    r.distinct = !same_field(K1, K2);
    r.degrees_odd_prime = odd_prime(K1.degree) && odd_prime(K2.degree);
    if (!r.distinct) add_reason(r.reasons, "fields not distinct");
    if (!r.degrees_odd_prime) add_reason(r.reasons, "degree not an odd prime");
    if (r.distinct && r.degrees_odd_prime) return true;
    r.conclusion = Outcome::rejected;
    return false;
}

}  // namespace

QualificationReport qualify_pair(const FieldAnalysis& a1, const FieldAnalysis& a2)
{
    QualificationReport r;
    r.fields = {summarize(a1), summarize(a2)};
    if (!precheck(r, a1.spec, a2.spec)) return r;
    r.class_groups_cyclic = a1.class_group.is_cyclic && a2.class_group.is_cyclic;
    if (!r.class_groups_cyclic) add_reason(r.reasons, "class group not cyclic");
    r.hcf_abelian = {a1.genus.hcf_abelian, a2.genus.hcf_abelian};
    for (auto s : r.hcf_abelian)
        if (s == HcfStatus::unknown) add_reason(r.reasons, "Hilbert class field not certified abelian");
    for (int i = 0; i < 2; ++i) r.relatively_ramified[i] = is_relatively_ramified(a1.spec, a2.spec, i + 1);
    if (!r.relatively_ramified[0] || !r.relatively_ramified[1]) add_reason(r.reasons, "not relatively ramified");
    if (!r.reasons.empty()) {
        r.conclusion = Outcome::rejected;
        return r;
    }
    auto ctx = build_pair_context(a1.spec, a2.spec, a1.class_group, a2.class_group);
    r.certificate = choose_residue_class(ctx);
    r.conclusion = Outcome::qualified;
    r.statement = kConclusionStatement;
    return r;
}

QualificationReport qualify_pair(const AbelianFieldSpec& K1, const AbelianFieldSpec& K2, const ClassGroupConfig& cfg)
{
    QualificationReport r;
    r.fields = {summarize(K1), summarize(K2)};
    if (!precheck(r, K1, K2)) return r;
    try {
        return qualify_pair(analyze_field(K1, cfg), analyze_field(K2, cfg));
    } catch (const ResourceError& e) {
        r.reasons = {e.what()};
    } catch (const IndeterminateError& e) {
        r.reasons = {e.what()};
    }
    r.conclusion = Outcome::undecided;
    return r;
}

CorollaryReport corollary_driver(u64 p1, u64 q1, u64 p2, u64 q2, const ClassGroupConfig& cfg)
{
    CorollaryReport out;
    out.primes = {p1, q1, p2, q2};
    for (u64 p : out.primes) {
        if (!zmod::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        if (p % 3 != 1) throw std::invalid_argument(std::to_string(p) + " is not 1 mod 3");
    }
    auto sorted = out.primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("primes not distinct");

    std::array<std::vector<FieldAnalysis>, 2> fields;
    for (int s = 0; s < 2; ++s) {
        const u64 n = out.primes[2 * s] * out.primes[2 * s + 1];
        for (const auto& spec : enumerate_prime_degree_subfields(n, 3)) {
            auto a = analyze_field(spec, cfg);
            const long h = a.class_group.class_number;
            bool ok = (h == 1 && a.genus.hcf_abelian == HcfStatus::trivial) ||
                      (h == 3 && a.spec.level == n && a.genus.hcf_abelian == HcfStatus::certified);
            if (!ok) continue;
            out.admissible[s].push_back(summarize(a));
            fields[s].push_back(std::move(a));
        }
    }
    for (const auto& a1 : fields[0])
        for (const auto& a2 : fields[1]) out.pairs.push_back(qualify_pair(a1, a2));
    return out;
}

const std::vector<ReferenceRow>& reference_rows()
{
    static const std::vector<ReferenceRow> rows = {
        {1, 1, 7, 13, "x^3-x^2-2x+1", 1},       {1, 2, 7, 13, "x^3-x^2-4x-1", 1},
        {1, 3, 7, 19, "x^3-x^2-2x+1", 1},       {1, 4, 7, 19, "x^3-x^2-6x+7", 1},
        {1, 5, 7, 31, "x^3-x^2-2x+1", 1},       {1, 6, 7, 31, "x^3-x^2-10x+8", 1},
        {1, 7, 7, 37, "x^3-x^2-2x+1", 1},       {1, 8, 7, 37, "x^3-x^2-12x-11", 1},
        {1, 9, 7, 43, "x^3-x^2-2x+1", 1},       {1, 10, 7, 43, "x^3-x^2-14x-8", 1},
        {1, 11, 7, 61, "x^3-x^2-2x+1", 1},      {1, 12, 7, 61, "x^3-x^2-20x+9", 1},
        {1, 13, 7, 67, "x^3-x^2-2x+1", 1},      {1, 14, 7, 67, "x^3-x^2-22x-5", 1},
        {1, 15, 13, 19, "x^3-x^2-6x+7", 1},     {2, 1, 7, 13, "x^3-x^2-30x-27", 3},
        {2, 2, 7, 13, "x^3-x^2-30x+64", 3},     {2, 3, 7, 19, "x^3-x^2-44x-69", 3},
        {2, 4, 7, 19, "x^3-x^2-44x+64", 3},     {2, 5, 7, 31, "x^3-x^2-72x-209", 3},
        {2, 6, 7, 31, "x^3-x^2-72x+225", 3},    {2, 7, 7, 37, "x^3-x^2-86x+211", 3},
        {2, 8, 7, 37, "x^3-x^2-86x-48", 3},     {2, 9, 7, 43, "x^3-x^2-100x+379", 3},
        {2, 10, 7, 43, "x^3-x^2-100x-223", 3},  {2, 11, 7, 61, "x^3-x^2-142x+680", 3},
        {2, 12, 7, 61, "x^3-x^2-142x-601", 3},  {2, 13, 7, 67, "x^3-x^2-156x-608", 3},
        {2, 14, 7, 67, "x^3-x^2-156x+799", 3},  {2, 15, 13, 19, "x^3-x^2-82x+64", 3},
    };
    return rows;
}

std::vector<TableRow> reproduce_tables(const std::vector<std::pair<u64, u64>>& prime_pairs, const ClassGroupConfig& cfg)
{
    std::vector<FieldAnalysis> cache;
    auto analysis = [&](const AbelianFieldSpec& spec) -> const FieldAnalysis& {
        for (const auto& a : cache)
            if (same_field(a.spec, spec)) return a;
        cache.push_back(analyze_field(spec, cfg));
        return cache.back();
    };
    std::vector<TableRow> out;
    for (auto [p, q] : prime_pairs) {
        if (!zmod::is_prime(p) || !zmod::is_prime(q) || p == q)
            throw std::invalid_argument("reproduce_tables: need two distinct primes");
        auto subs = enumerate_prime_degree_subfields(p * q, 3);
        std::vector<std::vector<std::pair<int, int>>> refs(subs.size());
        for (const auto& row : reference_rows()) {
            if (!((row.p == p && row.q == q) || (row.p == q && row.q == p))) continue;
            auto hit = identify_field(IntPoly::parse(row.polynomial), subs);
            if (!hit) continue;
            for (std::size_t i = 0; i < subs.size(); ++i)
                if (same_field(subs[i], *hit)) refs[i].emplace_back(row.table, row.serial);
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            const auto& a = analysis(subs[i]);
            TableRow r;
            r.p = p;
            r.q = q;
            r.field = summarize(a);
            r.hcf_abelian = a.genus.hcf_abelian;
            r.references = refs[i];
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace eucl
