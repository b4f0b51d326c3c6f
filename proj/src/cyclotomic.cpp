#include "eucl/cyclotomic.hpp"

#include "eucl/ball.hpp"
#include "eucl/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace eucl {

using zmod::mulmod;

AbelianFieldSpec AbelianFieldSpec::make(u64 level, SubgroupModN h)
{
    if (h.modulus() != level) throw std::invalid_argument("AbelianFieldSpec: subgroup modulus differs from level");
    u64 phi = level == 1 ? 1 : zmod::euler_phi(level);
    if (h.size() == 0 || phi % h.size() != 0) throw std::invalid_argument("AbelianFieldSpec: not a subgroup");
    AbelianFieldSpec s;
    s.level = level;
    s.degree = phi / h.size();
    s.fixing = std::move(h);
    return s;
}

AbelianFieldSpec AbelianFieldSpec::from_generators(u64 level, std::span<const u64> gens)
{
    if (level == 0) throw std::invalid_argument("AbelianFieldSpec: level must be positive");
    return make(level, zmod::subgroup_closure(gens, level));
}

AbelianFieldSpec AbelianFieldSpec::rationals()
{
    return make(1, SubgroupModN());
}

bool same_field(const AbelianFieldSpec& a, const AbelianFieldSpec& b)
{
    return at_conductor(a) == at_conductor(b);
}

u64 conductor(const AbelianFieldSpec& spec)
{
    for (u64 m : zmod::divisors(spec.level)) {
        // kernel of reduction to m is generated by the elements 1 + t m
        bool inside = true;
        for (u64 t = 0; t < spec.level / m && inside; ++t) {
            u64 y = (1 + t * m) % spec.level;
            if (std::gcd(y, spec.level) == 1 && !spec.fixing.contains(y)) inside = false;
        }
        if (inside) return m;
    }
    return spec.level;
}

AbelianFieldSpec at_conductor(const AbelianFieldSpec& spec)
{
    u64 c = conductor(spec);
    if (c == spec.level) return spec;
    return AbelianFieldSpec::make(c, zmod::reduce(spec.fixing, c));
}

AbelianFieldSpec at_level(const AbelianFieldSpec& spec, u64 level)
{
    if (level == spec.level) return spec;
    if (level % spec.level != 0) throw std::invalid_argument("at_level: target must be a multiple of the level");
    return AbelianFieldSpec::make(level, zmod::lift(spec.fixing, level));
}

std::vector<AbelianFieldSpec> enumerate_prime_degree_subfields(u64 n, u64 p)
{
    if (!zmod::is_prime(p) || p == 2) throw std::invalid_argument("enumerate_prime_degree_subfields: p must be an odd prime");
    if (n == 0) throw std::invalid_argument("enumerate_prime_degree_subfields: n must be positive");
    std::vector<AbelianFieldSpec> out;
    if (n < 3) return out;
    auto g = zmod::unit_group(n);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        if (g.generator_orders[i] % p == 0) idx.push_back(i);
    const std::size_t r = idx.size();
    if (r == 0) return out;

    // all elements together with their exponent vectors restricted to idx
    std::vector<u64> elems{1 % n};
    std::vector<std::vector<u64>> expo{std::vector<u64>(r, 0)};
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        std::size_t cur = elems.size();
        auto pos = std::find(idx.begin(), idx.end(), i);
        u64 gk = 1 % n;
        for (u64 k = 1; k < g.generator_orders[i]; ++k) {
            gk = mulmod(gk, g.generators[i], n);
            for (std::size_t j = 0; j < cur; ++j) {
                elems.push_back(mulmod(elems[j], gk, n));
                auto e = expo[j];
                if (pos != idx.end()) e[pos - idx.begin()] = k % p;
                expo.push_back(std::move(e));
            }
        }
    }

    // characters to Z/p up to scaling: first nonzero coordinate equal to 1
    u64 total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= p;
    for (u64 code = 1; code < total; ++code) {
        std::vector<u64> a(r);
        u64 c = code;
        for (std::size_t i = 0; i < r; ++i) {
            a[i] = c % p;
            c /= p;
        }
        auto first = std::find_if(a.begin(), a.end(), [](u64 x) { return x != 0; });
        if (*first != 1) continue;
        std::vector<u64> ker;
        for (std::size_t j = 0; j < elems.size(); ++j) {
            u64 s = 0;
            for (std::size_t i = 0; i < r; ++i) s += a[i] * expo[j][i];
            if (s % p == 0) ker.push_back(elems[j]);
        }
        out.push_back(at_conductor(AbelianFieldSpec::make(n, SubgroupModN(n, std::move(ker)))));
    }
    std::sort(out.begin(), out.end(), [](const AbelianFieldSpec& x, const AbelianFieldSpec& y) {
        if (x.level != y.level) return x.level < y.level;
        return x.fixing.elements() < y.fixing.elements();
    });
    return out;
}

SubgroupModN inertia_subgroup(u64 level, u64 q)
{
    u64 m = level;
    while (m % q == 0) m /= q;
    return zmod::reduction_kernel(level, m);
}

u64 ramification_index(const AbelianFieldSpec& spec, u64 q)
{
    if (!zmod::is_prime(q)) throw std::invalid_argument("ramification_index: q must be prime");
    if (spec.level % q != 0) return 1;
    auto inertia = inertia_subgroup(spec.level, q);
    return inertia.size() / zmod::intersect(inertia, spec.fixing).size();
}

AbelianFieldSpec compositum(const AbelianFieldSpec& a, const AbelianFieldSpec& b)
{
    u64 l = std::lcm(a.level, b.level);
    return AbelianFieldSpec::make(l, zmod::intersect(at_level(a, l).fixing, at_level(b, l).fixing));
}

bool is_totally_real(const AbelianFieldSpec& spec)
{
    return spec.fixing.contains(spec.level - 1);
}

bool is_subfield(const AbelianFieldSpec& a, const AbelianFieldSpec& b)
{
    u64 l = std::lcm(a.level, b.level);
    auto ha = at_level(a, l).fixing;
    auto hb = at_level(b, l).fixing;
    return std::includes(ha.elements().begin(), ha.elements().end(), hb.elements().begin(), hb.elements().end());
}

FrobeniusClass frobenius_class(const AbelianFieldSpec& spec, u64 q)
{
    if (std::gcd(q, spec.level) != 1) throw std::invalid_argument("frobenius_class: q divides the level");
    FrobeniusClass f;
    f.representative = q % spec.level;
    f.is_identity = spec.fixing.contains(f.representative);
    for (u64 h : spec.fixing.elements()) f.coset.push_back(mulmod(h, f.representative, spec.level));
    std::sort(f.coset.begin(), f.coset.end());
    return f;
}

std::vector<std::vector<u64>> galois_cosets(const AbelianFieldSpec& spec0)
{
    auto spec = at_conductor(spec0);
    const u64 n = spec.level;
    std::vector<std::vector<u64>> out;
    if (n == 1) return {{0}};
    std::vector<char> used(n, 0);
    for (u64 x = 1; x < n; ++x) {
        if (used[x] || std::gcd(x, n) != 1) continue;
        std::vector<u64> c;
        for (u64 h : spec.fixing.elements()) {
            u64 y = mulmod(h, x, n);
            used[y] = 1;
            c.push_back(y);
        }
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// sum over a in coset of cos(2 pi a d / n), times w
Ball period(const std::vector<u64>& coset, u64 d, u64 n, mpfr_prec_t prec)
{
    Ball s(prec);
    for (u64 a : coset) s += Ball::cos_2pi(static_cast<long>(mulmod(a, d, n)), static_cast<long>(n), prec);
    return s;
}

bool pairwise_distinct(const std::vector<Ball>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i].overlaps(v[j])) return false;
    return true;
}

}  // namespace

IntPoly defining_polynomial(const AbelianFieldSpec& spec0)
{
    auto spec = at_conductor(spec0);
    const u64 n = spec.level;
    if (!is_totally_real(spec)) throw std::invalid_argument("defining_polynomial: field must be totally real");
    auto cosets = galois_cosets(spec);
    std::vector<u64> mults;
    for (u64 d : zmod::divisors(n))
        if (d < n || n == 1) mults.push_back(d);

    // candidate element: sum_j c_j * period(d_j); singles first, then pairs
    std::vector<std::vector<std::pair<u64, long>>> candidates;
    for (u64 d : mults) candidates.push_back({{d, 1}});
    for (u64 d : mults)
        if (d != 1)
            for (long t = 1; t <= 3; ++t) candidates.push_back({{1, 1}, {d, t}});

    constexpr mpfr_prec_t kCap = 1 << 14;
    for (mpfr_prec_t prec = 128; prec <= kCap; prec *= 2) {
        for (const auto& cand : candidates) {
            std::vector<Ball> roots;
            for (const auto& c : cosets) {
                Ball v(prec);
                for (auto [d, t] : cand) v += Ball(t, prec) * period(c, d, n, prec);
                roots.push_back(std::move(v));
            }
            if (!pairwise_distinct(roots)) continue;
            std::vector<Ball> poly{Ball(1, prec)};
            for (const auto& r : roots) {
                std::vector<Ball> next(poly.size() + 1, Ball(prec));
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] += poly[i];
                    next[i] -= poly[i] * r;
                }
                poly = std::move(next);
            }
            std::vector<Int> coeffs;
            bool ok = true;
            for (const auto& b : poly) {
                auto z = b.unique_integer();
                if (!z) {
                    ok = false;
                    break;
                }
                coeffs.push_back(*z);
            }
            if (ok) return IntPoly(std::move(coeffs));
            break;  // same candidate needs more precision
        }
    }
    throw IndeterminateError("defining_polynomial: precision cap reached");
}

std::optional<AbelianFieldSpec> identify_field(const IntPoly& poly, const std::vector<AbelianFieldSpec>& candidates,
                                               std::size_t prime_count)
{
    if (!poly.is_monic()) throw std::invalid_argument("identify_field: polynomial must be monic");
    Int disc = discriminant(poly);
    if (disc == 0) throw std::invalid_argument("identify_field: polynomial is not squarefree");
    std::vector<const AbelianFieldSpec*> pool;
    u64 l = 1;
    for (const auto& c : candidates)
        if (static_cast<int>(c.degree) == poly.degree()) {
            pool.push_back(&c);
            l = std::lcm(l, c.level);
        }
    constexpr std::size_t kMaxPrimes = 200 * 64;
    for (std::size_t count = prime_count; count <= kMaxPrimes; count *= 2) {
        std::vector<const AbelianFieldSpec*> hits;
        std::vector<std::pair<u64, bool>> samples;
        for (u64 q = 2; samples.size() < count; ++q) {
            if (!zmod::is_prime(q) || l % q == 0 || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
            samples.emplace_back(q, splits_completely_mod(poly, q));
        }
        for (const auto* c : pool) {
            bool match = true;
            for (auto [q, split] : samples)
                if (c->fixing.contains(q % c->level) != split) {
                    match = false;
                    break;
                }
            if (match) hits.push_back(c);
        }
        if (hits.empty()) return std::nullopt;
        if (hits.size() == 1) return *hits.front();
        // identical fields among the candidates are not ambiguous
        bool all_same = std::all_of(hits.begin(), hits.end(), [&](const auto* h) { return same_field(*h, *hits.front()); });
        if (all_same) return *hits.front();
    }
    throw ResourceError("identify_field: candidates not separated by the prime bound");
}

}  // namespace eucl
