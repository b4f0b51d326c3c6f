#include "eucl/zmod.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace eucl::zmod {

u64 mulmod(u64 a, u64 b, u64 n)
{
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % n);
}

u64 powmod(u64 a, u64 e, u64 n)
{
    if (n == 1) return 0;
    u64 r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod(r, a, n);
        a = mulmod(a, a, n);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 n)
{
    i64 t = 0, newt = 1;
    i64 r = static_cast<i64>(n), newr = static_cast<i64>(a % n);
    while (newr != 0) {
        i64 q = r / newr;
        std::tie(t, newt) = std::make_pair(newt, t - q * newt);
        std::tie(r, newr) = std::make_pair(newr, r - q * newr);
    }
    if (r != 1) throw std::invalid_argument("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(n));
    if (t < 0) t += static_cast<i64>(n);
    return static_cast<u64>(t);
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (u64 p : small) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : small) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

constexpr u64 kTrialLimit = 1000000;

u64 rho_split(u64 n, std::mt19937_64& rng)
{
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<u64> dist(1, n - 1);
    for (;;) {
        u64 c = dist(rng), y = dist(rng), m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_into(u64 n, std::vector<u64>& out, std::mt19937_64& rng)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = rho_split(n, rng);
    split_into(d, out, rng);
    split_into(n / d, out, rng);
}

}  // namespace

std::vector<u64> Factorization::primes() const
{
    std::vector<u64> ps;
    for (auto& [p, e] : factors) ps.push_back(p);
    return ps;
}

u64 Factorization::multiply_out() const
{
    u64 r = 1;
    for (auto& [p, e] : factors)
        for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

Factorization factorize(u64 n, u64 seed)
{
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization f;
    f.n = n;
    std::vector<u64> ps;
    u64 m = n;
    for (u64 p = 2; p <= kTrialLimit && p * p <= m; p += (p == 2 ? 1 : 2)) {
        while (m % p == 0) {
            ps.push_back(p);
            m /= p;
        }
    }
    if (m > 1) {
        std::mt19937_64 rng(seed);
        split_into(m, ps, rng);
    }
    std::sort(ps.begin(), ps.end());
    for (u64 p : ps) {
        if (!f.factors.empty() && f.factors.back().first == p)
            ++f.factors.back().second;
        else
            f.factors.emplace_back(p, 1);
    }
    return f;
}

u64 euler_phi(u64 n)
{
    u64 r = n;
    for (auto& [p, e] : factorize(n).factors) r = r / p * (p - 1);
    return r;
}

u64 carmichael_lambda(u64 n)
{
    u64 l = 1;
    for (auto& [p, e] : factorize(n).factors) {
        u64 pk = 1;
        for (unsigned i = 1; i < e; ++i) pk *= p;
        u64 v = pk * (p - 1);
        if (p == 2 && e >= 3) v /= 2;
        l = std::lcm(l, v);
    }
    return l;
}

std::vector<u64> divisors(u64 n)
{
    std::vector<u64> ds{1};
    for (auto& [p, e] : factorize(n).factors) {
        std::size_t cur = ds.size();
        u64 pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

unsigned valuation(u64 n, u64 p)
{
    unsigned v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

namespace {

u64 primitive_root_mod_prime(u64 p)
{
    if (p == 2) return 1;
    auto qs = factorize(p - 1).primes();
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (u64 q : qs) {
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

// x with x = a mod m1, x = 1 mod m2 (gcd(m1, m2) = 1).
u64 crt_with_one(u64 a, u64 m1, u64 m2)
{
    if (m2 == 1) return a % m1;
    // x = 1 + m2 * t, need 1 + m2 t = a mod m1
    u64 inv = invmod(m2 % m1, m1);
    u64 t = mulmod((a % m1 + m1 - 1) % m1, inv, m1);
    return (1 + m2 * t) % (m1 * m2);
}

}  // namespace

u64 UnitGroupModN::order() const
{
    u64 r = 1;
    for (u64 o : generator_orders) r *= o;
    return r;
}

std::vector<u64> UnitGroupModN::elements() const
{
    std::vector<u64> out{1 % modulus};
    for (std::size_t i = 0; i < generators.size(); ++i) {
        std::size_t cur = out.size();
        u64 g = generators[i], gk = 1 % modulus;
        for (u64 k = 1; k < generator_orders[i]; ++k) {
            gk = mulmod(gk, g, modulus);
            for (std::size_t j = 0; j < cur; ++j) out.push_back(mulmod(out[j], gk, modulus));
        }
    }
    return out;
}

UnitGroupModN unit_group(u64 n)
{
    if (n < 2) throw std::invalid_argument("unit_group: n must be at least 2");
    UnitGroupModN g;
    g.modulus = n;
    for (auto& [p, e] : factorize(n).factors) {
        u64 pk = 1;
        for (unsigned i = 0; i < e; ++i) pk *= p;
        u64 rest = n / pk;
        if (p == 2) {
            if (e >= 2) {
                g.generators.push_back(crt_with_one(pk - 1, pk, rest));
                g.generator_orders.push_back(2);
            }
            if (e >= 3) {
                g.generators.push_back(crt_with_one(5, pk, rest));
                g.generator_orders.push_back(pk / 4);
            }
            continue;
        }
        u64 r = primitive_root_mod_prime(p);
        if (e >= 2 && powmod(r, p - 1, p * p) == 1) r += p;
        g.generators.push_back(crt_with_one(r, pk, rest));
        g.generator_orders.push_back(pk / p * (p - 1));
    }
    return g;
}

u64 element_order(u64 x, u64 n)
{
    x %= n;
    if (std::gcd(x, n) != 1) throw std::invalid_argument("element_order: residue not coprime to modulus");
    if (n == 1) return 1;
    u64 ord = carmichael_lambda(n);
    for (u64 q : factorize(ord).primes()) {
        while (ord % q == 0 && powmod(x, ord / q, n) == 1) ord /= q;
    }
    return ord;
}

u64 strip_two_part(u64 c, u64 n)
{
    u64 ord = element_order(c, n);
    u64 r = c % n;
    while (ord % 2 == 0) {
        r = mulmod(r, r, n);
        ord /= 2;
    }
    return r;
}

int jacobi_symbol(i64 a, u64 n)
{
    if (n % 2 == 0) throw std::invalid_argument("jacobi_symbol: modulus must be odd");
    i64 m = static_cast<i64>(n % 0x7fffffffffffffffULL);
    u64 x = static_cast<u64>(((a % m) + m) % m);
    int t = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(x, n);
        if (x % 4 == 3 && n % 4 == 3) t = -t;
        x %= n;
    }
    return n == 1 ? t : 0;
}

int legendre_symbol(u64 a, u64 p)
{
    u64 r = powmod(a % p, (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

SubgroupModN::SubgroupModN(u64 modulus, std::vector<u64> elements)
    : modulus_(modulus), elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool SubgroupModN::contains(u64 x) const
{
    return std::binary_search(elements_.begin(), elements_.end(), x % modulus_);
}

SubgroupModN subgroup_closure(std::span<const u64> gens, u64 n)
{
    if (n == 0) throw std::invalid_argument("subgroup_closure: modulus must be positive");
    std::vector<u64> elems{1 % n};
    std::vector<char> seen(n, 0);
    seen[1 % n] = 1;
    for (u64 g0 : gens) {
        u64 g = g0 % n;
        if (std::gcd(g, n) != 1) throw std::invalid_argument("subgroup_closure: generator not coprime to modulus");
        if (seen[g]) continue;
        // multiply the current subgroup by successive powers of g until closed
        std::vector<u64> base = elems;
        u64 gk = g;
        while (!seen[gk]) {
            for (u64 b : base) {
                u64 v = mulmod(b, gk, n);
                if (!seen[v]) {
                    seen[v] = 1;
                    elems.push_back(v);
                }
            }
            gk = mulmod(gk, g, n);
        }
    }
    return SubgroupModN(n, std::move(elems));
}

SubgroupModN full_unit_group(u64 n)
{
    std::vector<u64> elems;
    if (n == 1) return SubgroupModN(1, {0});
    for (u64 x = 1; x < n; ++x)
        if (std::gcd(x, n) == 1) elems.push_back(x);
    return SubgroupModN(n, std::move(elems));
}

SubgroupModN intersect(const SubgroupModN& a, const SubgroupModN& b)
{
    if (a.modulus() != b.modulus()) throw std::invalid_argument("intersect: moduli differ");
    std::vector<u64> out;
    std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                          std::back_inserter(out));
    return SubgroupModN(a.modulus(), std::move(out));
}

SubgroupModN lift(const SubgroupModN& h, u64 n)
{
    u64 m = h.modulus();
    if (n % m != 0) throw std::invalid_argument("lift: target level must be a multiple of the modulus");
    std::vector<u64> out;
    out.reserve(h.size() * (n / m));
    for (u64 t = 0; t < n / m; ++t) {
        for (u64 x : h.elements()) {
            u64 y = x + t * m;
            if (std::gcd(y, n) == 1) out.push_back(y % n);
        }
    }
    return SubgroupModN(n, std::move(out));
}

SubgroupModN reduce(const SubgroupModN& h, u64 m)
{
    if (h.modulus() % m != 0) throw std::invalid_argument("reduce: target must divide the modulus");
    std::vector<u64> out;
    out.reserve(h.size());
    for (u64 x : h.elements()) out.push_back(x % m);
    return SubgroupModN(m, std::move(out));
}

SubgroupModN reduction_kernel(u64 n, u64 m)
{
    if (n % m != 0) throw std::invalid_argument("reduction_kernel: m must divide n");
    std::vector<u64> out;
    for (u64 t = 0; t < n / m; ++t) {
        u64 y = (1 + t * m) % n;
        if (std::gcd(y, n) == 1) out.push_back(y);
    }
    if (n == 1) out = {0};
    return SubgroupModN(n, std::move(out));
}

u64 order_modulo(u64 x, const SubgroupModN& h)
{
    u64 n = h.modulus();
    u64 y = x % n;
    for (u64 k = 1; k <= n; ++k) {
        if (h.contains(y)) return k;
        y = mulmod(y, x, n);
    }
    throw std::invalid_argument("order_modulo: residue not a unit");
}

}  // namespace eucl::zmod
