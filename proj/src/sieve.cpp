#include "eucl/sieve.hpp"

#include "eucl/errors.hpp"
#include "eucl/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace eucl {

namespace {

constexpr u64 kSegment = u64{1} << 20;

std::vector<u64> small_primes(u64 n)
{
    std::vector<char> comp(n + 1, 0);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// element value mod p at theta = r
u64 reduce_at(const MaximalOrder& o, const Elt& x, u64 r, u64 p)
{
    auto c = o.to_power_basis(x);
    u64 acc = 0;
    u64 rp = 1;
    for (const auto& q : c) {
        Int num = q.get_num() % Int(static_cast<unsigned long>(p));
        if (num < 0) num += static_cast<unsigned long>(p);
        Int den = q.get_den() % Int(static_cast<unsigned long>(p));
        if (den == 0) throw std::invalid_argument("residue_signature: p divides a unit denominator");
        u64 v = zmod::mulmod(num.get_ui(), zmod::invmod(den.get_ui(), p), p);
        acc = (acc + zmod::mulmod(v, rp, p)) % p;
        rp = zmod::mulmod(rp, r, p);
    }
    return acc;
}

}  // namespace

double default_epsilon(double b)
{
    return 1.0 - 2.0 * b - 1e-3;
}

void validate(const SieveParams& s)
{
    if (s.f % 16 != 0) throw std::invalid_argument("sieve: f must be divisible by 16");
    if (s.u1 == 0 || std::gcd(s.u1, s.f) != 1) throw std::invalid_argument("sieve: gcd(u1, f) must be 1");
    if (std::gcd((s.u1 - 1) / 2, s.f) != 1) throw std::invalid_argument("sieve: gcd((u1 - 1)/2, f) must be 1");
    if (!(0.25 < s.a && s.a < s.b && s.b < 0.5)) throw std::invalid_argument("sieve: need 1/4 < a < b < 1/2");
    if (!(0 < s.epsilon && s.epsilon < 1)) throw std::invalid_argument("sieve: epsilon must lie in (0, 1)");
    const double t = s.b / (1 - s.epsilon);
    if (!(s.a < t && t < 0.5)) throw std::invalid_argument("sieve: need a < b/(1 - epsilon) < 1/2");
    if (s.X < 100) throw std::invalid_argument("sieve: X must be at least 100");
}

const char* to_string(HalfType t)
{
    return t == HalfType::prime ? "prime" : "semiprime";
}

std::optional<SieveRecord> classify_half(u64 p, long double lo, long double hi, bool inclusive)
{
    if (p < 5 || p % 2 == 0) return std::nullopt;
    const u64 h = (p - 1) / 2;
    SieveRecord r;
    r.p = p;
    if (zmod::is_prime(h)) {
        r.half_type = HalfType::prime;
        r.q1 = h;
        r.q2 = 1;
        return r;
    }
    auto fac = zmod::factorize(h);
    std::vector<u64> ps;
    for (auto [q, e] : fac.factors)
        for (unsigned i = 0; i < e; ++i) ps.push_back(q);
    if (ps.size() != 2) return std::nullopt;
    const long double q1 = static_cast<long double>(ps[0]);
    bool in = inclusive ? (lo <= q1 && q1 <= hi) : (lo < q1 && q1 < hi);
    if (!in) return std::nullopt;
    r.half_type = HalfType::semiprime;
    r.q1 = ps[0];
    r.q2 = ps[1];
    return r;
}

std::vector<u64> progression_primes(u64 u, u64 v, u64 lo, u64 hi)
{
    if (v == 0) throw std::invalid_argument("progression_primes: modulus must be positive");
    std::vector<u64> out;
    if (hi < 2 || lo > hi) return out;
    lo = std::max<u64>(lo, 2);
    const auto base = small_primes(isqrt(hi));
    u %= v;
    for (u64 s = lo; s <= hi; s += kSegment) {
        const u64 e = std::min(hi, s + kSegment - 1);
        std::vector<char> comp(e - s + 1, 0);
        for (u64 q : base) {
            u64 start = std::max(q * q, (s + q - 1) / q * q);
            for (u64 j = start; j <= e; j += q) comp[j - s] = 1;
        }
        // first element of the progression in the segment
        u64 x = s + (u + v - s % v) % v;
        for (; x <= e; x += v)
            if (!comp[x - s]) out.push_back(x);
        if (e == hi) break;
    }
    return out;
}

std::vector<SieveRecord> heath_brown_set(const SieveParams& params)
{
    validate(params);
    const long double X = static_cast<long double>(params.X);
    const long double lo_p = std::pow(X, 1.0L - params.epsilon);
    const long double qlo = std::pow(X, static_cast<long double>(params.a));
    const long double qhi = std::pow(X, static_cast<long double>(params.b));
    std::vector<SieveRecord> out;
    for (u64 p : progression_primes(params.u1, params.f, static_cast<u64>(std::floor(lo_p)) + 1, params.X - 1)) {
        if (static_cast<long double>(p) <= lo_p) continue;
        if (auto r = classify_half(p, qlo, qhi, true)) out.push_back(*r);
    }
    return out;
}

std::vector<SieveRecord> m_epsilon_set(const AbelianFieldSpec& K, const SieveParams& params)
{
    validate(params);
    const long double ea = params.a;
    const long double eb = params.b / (1.0L - params.epsilon);
    std::vector<SieveRecord> out;
    for (u64 p : progression_primes(params.u1, params.f, 2, params.X)) {
        const long double lp = static_cast<long double>(p);
        auto r = classify_half(p, std::pow(lp, ea), std::pow(lp, eb), false);
        if (!r) continue;
        if (!frobenius_class(K, p).is_identity) throw InconsistencyError("m_epsilon_set: p does not split completely");
        out.push_back(*r);
    }
    return out;
}

std::vector<int> residue_signature(u64 p, const std::vector<SieveUnit>& units)
{
    std::vector<int> out;
    for (const auto& u : units) {
        auto roots = roots_mod(u.order->polynomial(), p);
        if (roots.empty()) throw std::invalid_argument("residue_signature: no degree-1 prime above p");
        const u64 r = *std::min_element(roots.begin(), roots.end());
        const u64 v = reduce_at(*u.order, u.value, r, p);
        const int s = zmod::legendre_symbol(v, p);
        if (s == 0) throw InconsistencyError("residue_signature: unit reduces to 0");
        out.push_back(s);
    }
    return out;
}

int partition_cell(const std::vector<int>& signature)
{
    if (signature.size() > 3) throw std::invalid_argument("partition_cell: at most three units");
    int n = 1;
    for (std::size_t i = 0; i < signature.size(); ++i)
        if (signature[i] == 1) n += 1 << i;  // c_i = -1
    return n;
}

Partition partition_m(std::vector<SieveRecord>& records)
{
    Partition out;
    for (auto& r : records) {
        r.cell = partition_cell(r.signature);
        ++out.counts[r.cell - 1];
    }
    for (int n = 1; n <= 8; ++n)
        if (out.counts[n - 1] > out.counts[out.dominant - 1]) out.dominant = n;
    return out;
}

u64 primitive_root_scan(std::vector<SieveRecord>& records, const std::vector<SieveUnit>& units)
{
    u64 count = 0;
    for (auto& r : records) {
        const u64 p = r.p;
        std::vector<u64> ell{2, r.q1};
        if (r.half_type == HalfType::semiprime) ell.push_back(r.q2);
        auto sig = r.signature.size() == units.size() ? r.signature : residue_signature(p, units);
        r.winner_index = 0;
        r.winner = 0;
        for (std::size_t i = 0; i < units.size(); ++i) {
            auto roots = roots_mod(units[i].order->polynomial(), p);
            const u64 root = *std::min_element(roots.begin(), roots.end());
            u64 eta = reduce_at(*units[i].order, units[i].value, root, p);
            if (sig[i] == 1) eta = (p - eta) % p;  // c_i = -1
            bool primitive = true;
            for (u64 l : ell)
                if (zmod::powmod(eta, (p - 1) / l, p) == 1) primitive = false;
            if (primitive) {
                r.winner_index = static_cast<int>(i) + 1;
                r.winner = eta;
                ++count;
                break;
            }
        }
    }
    return count;
}

bool is_primitive_root(u64 g, u64 p)
{
    if (p < 2 || !zmod::is_prime(p)) throw std::invalid_argument("is_primitive_root: p must be prime");
    g %= p;
    if (g == 0) return false;
    u64 m = p - 1;
    for (u64 l = 2; l * l <= m; ++l) {
        if (m % l) continue;
        if (zmod::powmod(g, (p - 1) / l, p) == 1) return false;
        while (m % l == 0) m /= l;
    }
    if (m > 1 && zmod::powmod(g, (p - 1) / m, p) == 1) return false;
    return true;
}

double density_ratio(u64 count, u64 X)
{
    if (X < 100) throw std::invalid_argument("density_ratio: X must be at least 100");
    const double l = std::log(static_cast<double>(X));
    return static_cast<double>(count) / (static_cast<double>(X) / (l * l));
}

SieveReport run_sieve(const SieveParams& params, const AbelianFieldSpec& K, const std::vector<SieveUnit>& units)
{
    SieveReport rep;
    rep.params = params;
    rep.J_count = heath_brown_set(params).size();
    rep.records = m_epsilon_set(K, params);
    rep.M_count = rep.records.size();
    for (auto& r : rep.records) r.signature = residue_signature(r.p, units);
    auto part = partition_m(rep.records);
    rep.M_n_counts = part.counts;
    rep.dominant_n0 = part.dominant;
    rep.primitive_root_count = primitive_root_scan(rep.records, units);
    rep.J_density = density_ratio(rep.J_count, params.X);
    rep.M_density = density_ratio(rep.M_count, params.X);
    rep.primitive_root_density = density_ratio(rep.primitive_root_count, params.X);
    return rep;
}

std::vector<LadderRung> density_ladder(const SieveReport& full, u64 start)
{
    if (start < 100) throw std::invalid_argument("density_ladder: start must be at least 100");
    std::vector<LadderRung> out;
    for (u64 x = start; x <= full.params.X; x *= 2) {
        LadderRung r;
        r.X = x;
        auto p = full.params;
        p.X = x;
        r.J_count = heath_brown_set(p).size();
        for (const auto& rec : full.records) {
            if (rec.p > x) continue;
            ++r.M_count;
            if (rec.winner_index) ++r.primitive_root_count;
        }
        r.J_density = density_ratio(r.J_count, x);
        r.M_density = density_ratio(r.M_count, x);
        out.push_back(r);
        if (x > full.params.X / 2) break;
    }
    return out;
}

std::string sieve_csv(const SieveReport& report)
{
    std::ostringstream os;
    os << "p,half_type,q1,sig1,sig2,sig3,winner\n";
    for (const auto& r : report.records) {
        os << r.p << ',' << to_string(r.half_type) << ',' << r.q1;
        for (std::size_t i = 0; i < 3; ++i) {
            os << ',';
            if (i < r.signature.size()) os << r.signature[i];
        }
        os << ',';
        if (r.winner_index) os << r.winner;
        os << '\n';
    }
    return os.str();
}

}  // namespace eucl
