#include "eucl/classgroup.hpp"

#include "eucl/errors.hpp"
#include "eucl/lattice.hpp"
#include "eucl/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace eucl {

namespace {

long double minkowski_bound(const MaximalOrder& o)
{
    const int n = o.degree();
    long double c = 1;
    for (int i = 1; i <= n; ++i) c *= static_cast<long double>(i) / n;
    return c * std::sqrt(static_cast<long double>(Int(abs(o.discriminant())).get_d()));
}

// Reduces x modulo the rows of a square upper-triangular HNF.
std::vector<Int> reduce_mod_hnf(const IntMatrix& h, std::vector<Int> x)
{
    for (std::size_t i = 0; i < h.rows(); ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), x[i].get_mpz_t(), h(i, i).get_mpz_t());
        if (q != 0)
            for (std::size_t j = i; j < h.cols(); ++j) x[j] -= q * h(i, j);
    }
    return x;
}

bool is_zero_vec(const std::vector<Int>& x)
{
    return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

Ideal ideal_product(const MaximalOrder& o, const std::vector<PrimeIdeal>& fb, const std::vector<long>& e)
{
    Ideal r = unit_ideal(o);
    for (std::size_t j = 0; j < fb.size(); ++j)
        if (e[j] > 0) r = ideal_mul(o, r, ideal_pow(o, fb[j].ideal, static_cast<unsigned>(e[j])));
    return r;
}

struct PrimeTable {
    // q -> (prime, factor-base index or -1)
    std::map<long, std::vector<std::pair<PrimeIdeal, long>>> above;
    std::vector<PrimeIdeal> fb;
};

PrimeTable build_factor_base(const MaximalOrder& o)
{
    PrimeTable t;
    const long double m = minkowski_bound(o) * (1 + 1e-12L);
    for (long q = 2; q <= m; ++q) {
        if (!zmod::is_prime(q)) continue;
        for (auto& p : factor_rational_prime(o, q)) {
            bool in = p.norm().get_d() <= m;
            t.above[q].emplace_back(p, in ? 0 : -1);
        }
    }
    for (auto& [q, list] : t.above)
        for (auto& [p, idx] : list)
            if (idx == 0) {
                idx = static_cast<long>(t.fb.size());
                t.fb.push_back(p);
            }
    return t;
}

// Exponent vector of (alpha) over the factor base, or nullopt if not smooth.
std::optional<std::vector<long>> smooth_relation(const MaximalOrder& o, const PrimeTable& t, const Elt& alpha)
{
    Int n = abs(o.norm(alpha));
    if (n == 0) return std::nullopt;
    std::vector<long> e(t.fb.size(), 0);
    for (const auto& [q, list] : t.above) {
        if (n == 1) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), q)) continue;
        while (mpz_divisible_ui_p(n.get_mpz_t(), q)) n /= q;
        for (const auto& [p, idx] : list) {
            int v = valuation(o, p, alpha);
            if (v == 0) continue;
            if (idx < 0) return std::nullopt;
            e[idx] = v;
        }
    }
    if (n != 1) return std::nullopt;
    return e;
}

// log-space weight vectors for relation searches: 0 and s (e_i - e_j)
std::vector<std::vector<long double>> relation_weights(int n, long double s)
{
    std::vector<std::vector<long double>> w{std::vector<long double>(n, 0)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                std::vector<long double> v(n, 0);
                v[i] = s;
                v[j] = -s;
                w.push_back(v);
            }
    return w;
}

}  // namespace

std::optional<Elt> principal_generator(const MaximalOrder& o, const UnitSystem& units, const Ideal& a,
                                       const ClassGroupConfig& cfg)
{
    const int n = o.degree();
    const int r = n - 1;
    if (static_cast<int>(units.units.size()) != r) throw std::invalid_argument("principal_generator: need a full unit system");
    const Int norm = ideal_norm(a);
    if (norm == 1) return o.one();
    const long double c0 = std::log(static_cast<long double>(norm.get_d())) / n;
    const long double delta = cfg.cell_radius;
    const long double bound = n * std::exp(2 * delta);

    std::vector<std::vector<long double>> logs;
    std::vector<long> cells;
    for (const auto& u : units.units) {
        auto lv = log_embedding(o, u);
        long double sup = 0;
        for (auto v : lv) sup = std::max(sup, std::fabs(v));
        cells.push_back(std::max(1L, static_cast<long>(std::ceil(r * sup / (2 * delta)))));
        logs.push_back(std::move(lv));
    }
    // cell centres sum_i (j_i + 1/2) / m_i * L_i cover the fundamental domain
    std::vector<long> j(r, 0);
    while (true) {
        std::vector<long double> v(n, c0);
        for (int i = 0; i < r; ++i) {
            long double t = (j[i] + 0.5L) / cells[i];
            for (int k = 0; k < n; ++k) v[k] += t * logs[i][k];
        }
        for (const auto& x : weighted_short_elements(o, a, v, bound, cfg.max_nodes))
            if (abs(o.norm(x)) == norm) return x;
        int i = 0;
        while (i < r && j[i] == cells[i] - 1) j[i++] = 0;
        if (i == r) break;
        ++j[i];
    }
    return std::nullopt;
}

bool verify_relation(const MaximalOrder& o, const std::vector<PrimeIdeal>& factor_base, const RelationWitness& w)
{
    return ideal_product(o, factor_base, w.exponents) == w.ideal && principal_ideal(o, w.generator) == w.ideal;
}

ClassGroupResult class_group(const MaximalOrder& o, const ClassGroupConfig& cfg)
{
    return class_group(o, find_units(o, {.max_nodes = cfg.max_nodes}), cfg);
}

ClassGroupResult class_group(const MaximalOrder& o, const UnitSystem& units, const ClassGroupConfig& cfg)
{
    const int n = o.degree();
    if (o.real_embeddings() != n) throw std::invalid_argument("class_group: field must be totally real");
    ClassGroupResult res;
    res.units = units;
    auto table = build_factor_base(o);
    res.factor_base = table.fb;
    const std::size_t k = table.fb.size();
    if (k == 0) return res;

    const long double root_disc = std::pow(static_cast<long double>(Int(abs(o.discriminant())).get_d()), 1.0L / n);
    IntMatrix h;  // HNF of the relations found so far
    std::set<std::vector<long>> seen;
    auto add_relation = [&](const std::vector<long>& e, const Elt& alpha) {
        if (!seen.insert(e).second) return;
        std::vector<Int> row(e.begin(), e.end());
        IntMatrix next;
        if (h.rows() == k) {
            next = hnf_insert(h, row);
        } else {
            next = h;
            if (next.rows() == 0) next = IntMatrix(0, k);
            next.append_row(row);
            next = hnf(next);
        }
        if (next == h) return;
        h = std::move(next);
        res.relation_log.push_back({e, ideal_product(o, table.fb, e), alpha});
    };

    // seeds: the whole ring and each factor-base prime, at several weights
    std::vector<Ideal> seeds{unit_ideal(o)};
    for (const auto& p : table.fb) seeds.push_back(p.ideal);
    const auto weights = relation_weights(n, 0.75L);
    long double factor = 1;
    for (int round = 0; round < cfg.max_rounds && h.rows() < k; ++round, factor *= 2) {
        for (const auto& s : seeds) {
            long double nb = n * std::pow(static_cast<long double>(ideal_norm(s).get_d()), 2.0L / n) * root_disc * factor;
            for (const auto& w : weights) {
                for (const auto& x : weighted_short_elements(o, s, w, nb, cfg.max_nodes)) {
                    auto e = smooth_relation(o, table, x);
                    if (e) add_relation(*e, x);
                }
            }
        }
    }
    if (h.rows() < k) throw ResourceError("class_group: relation search did not reach full rank");

    // every element of prime order r in Z^k / L is non-principal, else L grows
    auto certify = [&]() -> bool {
        Int det = 1;
        for (std::size_t i = 0; i < k; ++i) det *= h(i, i);
        if (det > 1'000'000) throw ResourceError("class_group: relation lattice index too large to certify");
        const long d = det.get_si();
        std::vector<u64> primes;
        if (d > 1) primes = zmod::factorize(d).primes();
        for (u64 r : primes) {
            std::set<std::vector<Int>> done;
            std::vector<Int> x(k, 0);
            while (true) {
                if (!is_zero_vec(x) && !done.count(x)) {
                    std::vector<Int> rx(k);
                    for (std::size_t i = 0; i < k; ++i) rx[i] = x[i] * static_cast<unsigned long>(r);
                    if (is_zero_vec(reduce_mod_hnf(h, rx))) {
                        for (u64 m = 1; m < r; ++m) {
                            std::vector<Int> mx(k);
                            for (std::size_t i = 0; i < k; ++i) mx[i] = x[i] * static_cast<unsigned long>(m);
                            done.insert(reduce_mod_hnf(h, mx));
                        }
                        std::vector<long> e(k);
                        for (std::size_t i = 0; i < k; ++i) e[i] = x[i].get_si();
                        Ideal id = ideal_product(o, table.fb, e);
                        auto g = principal_generator(o, units, id, cfg);
                        if (g) {
                            add_relation(e, *g);
                            return false;
                        }
                        res.nonprincipal_log.push_back(e);
                    }
                }
                std::size_t i = 0;
                while (i < k && x[i] + 1 == h(i, i)) x[i++] = 0;
                if (i == k) break;
                ++x[i];
            }
        }
        return true;
    };
    while (!certify()) res.nonprincipal_log.clear();

    Int det = 1;
    for (std::size_t i = 0; i < k; ++i) det *= h(i, i);
    res.class_number = det.get_si();
    for (const auto& d : elementary_divisors(h))
        if (d > 1) res.structure.push_back(d.get_si());
    res.is_cyclic = res.structure.size() <= 1;
    if (res.class_number > 1 && res.is_cyclic) {
        for (std::size_t j = 0; j < k && !res.generator; ++j) {
            std::vector<Int> x(k, 0);
            long ord = 0;
            for (long m = 1; m <= res.class_number; ++m) {
                x[j] = m;
                if (is_zero_vec(reduce_mod_hnf(h, x))) {
                    ord = m;
                    break;
                }
            }
            if (ord == res.class_number) res.generator = table.fb[j];
        }
    }
    return res;
}

Ball analytic_class_number_value(const AbelianFieldSpec& spec0, const Ball& regulator)
{
    auto spec = at_conductor(spec0);
    const u64 p = spec.degree;
    const u64 f = spec.level;
    if (p < 3 || !zmod::is_prime(p)) throw std::invalid_argument("analytic_class_number: degree must be an odd prime");
    if (!is_totally_real(spec)) throw std::invalid_argument("analytic_class_number: field must be totally real");
    // coset index j(a) with a in g^j H
    u64 g = 1;
    while (std::gcd(g, f) != 1 || spec.fixing.contains(g)) ++g;
    std::vector<long> j(f, -1);
    u64 gj = 1;
    for (u64 e = 0; e < p; ++e) {
        for (u64 x : spec.fixing.elements()) j[zmod::mulmod(x, gj, f)] = static_cast<long>(e);
        gj = zmod::mulmod(gj, g, f);
    }
    const mpfr_prec_t prec = 128;
    std::vector<Ball> logsin(f, Ball(prec));
    for (u64 a = 1; a < f; ++a)
        if (j[a] >= 0) logsin[a] = log(abs(Ball(2, prec) * Ball::sin_2pi(static_cast<long>(a), static_cast<long>(2 * f), prec)));
    Ball prod(1, prec);
    for (u64 k = 1; k < p; ++k) {
        Ball re(prec), im(prec);
        for (u64 a = 1; a < f; ++a) {
            if (j[a] < 0) continue;
            long t = static_cast<long>((k * j[a]) % p);
            re += Ball::cos_2pi(t, static_cast<long>(p), prec) * logsin[a];
            im += Ball::sin_2pi(t, static_cast<long>(p), prec) * logsin[a];
        }
        prod *= sqrt(re * re + im * im);
    }
    Ball denom(1L << (p - 1), prec);
    return prod / (denom * regulator);
}

long analytic_class_number(const AbelianFieldSpec& spec, const Ball& regulator)
{
    Ball v = analytic_class_number_value(spec, regulator);
    const double mid = v.mid_double();
    const long h = std::lround(mid);
    if (h < 1 || std::fabs(mid - h) + v.radius_double() >= 1e-4)
        throw std::domain_error("analytic_class_number: value " + v.to_string(12) + " is not near a positive integer");
    return h;
}

const char* to_string(HcfStatus s)
{
    switch (s) {
    case HcfStatus::certified: return "certified";
    case HcfStatus::trivial: return "trivial";
    case HcfStatus::unknown: return "unknown";
    }
    return "unknown";
}

GenusCertificate genus_number(const AbelianFieldSpec& spec0)
{
    auto spec = at_conductor(spec0);
    GenusCertificate g;
    u64 prod = 1;
    if (spec.level > 1)
        for (u64 q : zmod::factorize(spec.level).primes()) {
            u64 e = ramification_index(spec, q);
            g.ramified_primes.emplace_back(q, e);
            prod *= e;
        }
    if (prod % spec.degree != 0) throw InconsistencyError("genus_number: product of ramification indices not divisible by the degree");
    g.genus_number = static_cast<long>(prod / spec.degree);
    return g;
}

AbelianFieldSpec genus_field(const AbelianFieldSpec& spec0)
{
    auto spec = at_conductor(spec0);
    const u64 f = spec.level;
    if (f == 1) return spec;
    std::vector<std::pair<u64, u64>> parts;  // (q^a, f / q^a)
    for (auto [q, a] : zmod::factorize(f).factors) {
        u64 qa = 1;
        for (unsigned i = 0; i < a; ++i) qa *= q;
        parts.emplace_back(qa, f / qa);
    }
    std::vector<u64> elems;
    for (u64 x = 1; x < f; ++x) {
        if (std::gcd(x, f) != 1) continue;
        bool keep = true;
        for (auto [qa, rest] : parts) {
            if (rest == 1) {
                keep = spec.fixing.contains(x);
                break;
            }
            // y = x mod q^a, y = 1 mod rest
            u64 t = zmod::mulmod((x % qa + qa - 1) % qa, zmod::invmod(rest % qa, qa), qa);
            u64 y = (1 + zmod::mulmod(rest, t, f)) % f;
            if (!spec.fixing.contains(y)) {
                keep = false;
                break;
            }
        }
        if (keep) elems.push_back(x);
    }
    return AbelianFieldSpec::make(f, SubgroupModN(f, std::move(elems)));
}

GenusCertificate hcf_abelian_certificate(const AbelianFieldSpec& spec, const ClassGroupResult& cg)
{
    auto g = genus_number(spec);
    const long h = cg.class_number;
    if (h == 1) {
        g.hcf_abelian = HcfStatus::trivial;
    } else if (h == g.genus_number && is_totally_real(genus_field(spec))) {
        g.hcf_abelian = HcfStatus::certified;
    } else {
        g.hcf_abelian = HcfStatus::unknown;
    }
    if (g.hcf_abelian == HcfStatus::certified &&
        genus_field(spec).degree != static_cast<u64>(g.genus_number) * at_conductor(spec).degree)
        throw InconsistencyError("hcf_abelian_certificate: genus field degree differs from g [K:Q]");
    if (g.hcf_abelian != HcfStatus::unknown) {
        if (g.genus_number % h != 0) throw InconsistencyError("hcf_abelian_certificate: h does not divide g");
        long x = h;
        while (x % static_cast<long>(spec.degree) == 0) x /= static_cast<long>(spec.degree);
        if (x != 1) throw InconsistencyError("hcf_abelian_certificate: h is not a power of the degree");
    }
    return g;
}

}  // namespace eucl
