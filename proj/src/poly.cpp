#include "eucl/poly.hpp"

#include "eucl/linalg.hpp"
#include "eucl/zmod.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace eucl {

namespace {

using u64 = std::uint64_t;

u64 addm(u64 a, u64 b, u64 q)
{
    u64 s = a + b;
    return s >= q ? s - q : s;
}

u64 subm(u64 a, u64 b, u64 q)
{
    return a >= b ? a - b : a + q - b;
}

u64 reduce_int(const Int& v, u64 q)
{
    Int r = v % Int(static_cast<unsigned long>(q));
    if (r < 0) r += static_cast<unsigned long>(q);
    return r.get_ui();
}

}  // namespace

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Int> c) : coeffs(std::move(c))
{
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly IntPoly::from_longs(std::initializer_list<long> c)
{
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return IntPoly(std::move(v));
}

IntPoly IntPoly::parse(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty polynomial");

    std::vector<Int> c;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            throw std::invalid_argument("malformed polynomial: " + s);
        }
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Int coef = 1;
        bool has_digits = j > i;
        if (has_digits) coef = Int(s.substr(i, j - i));
        i = j;
        std::size_t deg = 0;
        if (i < s.size() && s[i] == 'x') {
            ++i;
            deg = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i) throw std::invalid_argument("malformed exponent: " + s);
                deg = std::stoul(s.substr(i, j - i));
                i = j;
            }
        } else if (!has_digits) {
            throw std::invalid_argument("malformed polynomial: " + s);
        }
        if (c.size() <= deg) c.resize(deg + 1);
        c[deg] += sign * coef;
    }
    IntPoly f(std::move(c));
    if (f.coeffs.empty()) throw std::invalid_argument("zero polynomial");
    return f;
}

Int IntPoly::eval(const Int& x) const
{
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string IntPoly::to_string() const
{
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = degree(); d >= 0; --d) {
        const Int& c = coeffs[d];
        if (c == 0) continue;
        Int a = abs(c);
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? '-' : '+');
        }
        first = false;
        if (a != 1 || d == 0) os << a.get_str();
        if (d >= 1) os << 'x';
        if (d >= 2) os << '^' << d;
    }
    return os.str();
}

IntPoly derivative(const IntPoly& f)
{
    std::vector<Int> d;
    for (int i = 1; i <= f.degree(); ++i) d.push_back(f.coeffs[i] * i);
    return IntPoly(std::move(d));
}

std::vector<Int> power_sums(const IntPoly& f, int k)
{
    if (!f.is_monic()) throw std::invalid_argument("power_sums: polynomial must be monic");
    const int n = f.degree();
    // a[j] = coefficient of x^(n-j), a[0] = 1
    auto a = [&](int j) -> const Int& { return f.coeffs[n - j]; };
    std::vector<Int> s(std::max(k, 1));
    s[0] = n;
    for (int m = 1; m < k; ++m) {
        Int acc = 0;
        for (int j = 1; j <= std::min(m - 1, n); ++j) acc += a(j) * s[m - j];
        if (m <= n) acc += m * a(m);
        s[m] = -acc;
    }
    s.resize(k);
    return s;
}

Int discriminant(const IntPoly& f)
{
    if (!f.is_monic() || f.degree() < 1) throw std::invalid_argument("discriminant: monic polynomial of degree >= 1 required");
    const int n = f.degree();
    auto s = power_sums(f, 2 * n - 1);
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = s[i + j];
    return determinant(m);
}

std::vector<std::pair<Int, int>> factor_integer(const Int& a0)
{
    if (a0 == 0) throw std::invalid_argument("factor_integer: zero");
    Int a = abs(a0);
    std::vector<std::pair<Int, int>> out;
    if (a.fits_ulong_p()) {
        for (auto [p, e] : zmod::factorize(a.get_ui()).factors) out.emplace_back(Int(static_cast<unsigned long>(p)), static_cast<int>(e));
        return out;
    }
    for (unsigned long d = 2; d <= 1000000 && a > 1; ++d) {
        if (!mpz_divisible_ui_p(a.get_mpz_t(), d)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(a.get_mpz_t(), d)) {
            mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), d);
            ++e;
        }
        out.emplace_back(Int(d), e);
    }
    if (a > 1) {
        if (a.fits_ulong_p()) {
            for (auto [p, e] : zmod::factorize(a.get_ui()).factors) out.emplace_back(Int(static_cast<unsigned long>(p)), static_cast<int>(e));
        } else if (mpz_probab_prime_p(a.get_mpz_t(), 40)) {
            out.emplace_back(a, 1);
        } else if (mpz_perfect_square_p(a.get_mpz_t())) {
            Int r;
            mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
            if (!mpz_probab_prime_p(r.get_mpz_t(), 40)) throw std::runtime_error("factor_integer: cofactor too hard");
            out.emplace_back(r, 2);
        } else {
            throw std::runtime_error("factor_integer: cofactor too hard");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------- Sturm isolation

namespace {

IntPoly primitive_part(IntPoly p)
{
    Int g = 0;
    for (const auto& c : p.coeffs) g = gcd(g, c);
    if (g > 1)
        for (auto& c : p.coeffs) c /= g;
    return p;
}

// r with |lc(b)|^(da - db + 1) a = q b + r
IntPoly signed_prem(IntPoly a, const IntPoly& b)
{
    const int db = b.degree();
    const Int& lb = b.coeffs.back();
    Int alb = abs(lb);
    while (a.degree() >= db && !a.coeffs.empty()) {
        int shift = a.degree() - db;
        Int la = a.coeffs.back();
        for (auto& c : a.coeffs) c *= alb;
        // subtract (la * sign(lb)) x^shift b
        Int factor = sgn(lb) > 0 ? la : Int(-la);
        for (int i = 0; i <= db; ++i) a.coeffs[i + shift] -= factor * b.coeffs[i];
        a = IntPoly(std::move(a.coeffs));
    }
    return a;
}

std::vector<IntPoly> sturm_sequence(const IntPoly& f)
{
    std::vector<IntPoly> seq{primitive_part(f), primitive_part(derivative(f))};
    while (seq.back().degree() > 0) {
        IntPoly r = signed_prem(seq[seq.size() - 2], seq.back());
        if (r.coeffs.empty()) break;
        for (auto& c : r.coeffs) c = -c;
        seq.push_back(primitive_part(std::move(r)));
    }
    return seq;
}

// sign of p(num / 2^k)
int sign_at(const IntPoly& p, const Int& num, long k)
{
    const int n = p.degree();
    if (n < 0) return 0;
    Int acc = p.coeffs[n];
    for (int i = n - 1; i >= 0; --i) {
        Int scaled = p.coeffs[i];
        mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(k * (n - i)));
        acc = acc * num + scaled;
    }
    return sgn(acc);
}

int changes(const std::vector<int>& signs)
{
    int last = 0, v = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

int variations_at(const std::vector<IntPoly>& seq, const Int& num, long k)
{
    std::vector<int> s;
    for (const auto& p : seq) s.push_back(sign_at(p, num, k));
    return changes(s);
}

int variations_at_infinity(const std::vector<IntPoly>& seq, bool positive)
{
    std::vector<int> s;
    for (const auto& p : seq) {
        int lc = sgn(p.coeffs.back());
        s.push_back(positive || p.degree() % 2 == 0 ? lc : -lc);
    }
    return changes(s);
}

}  // namespace

int count_real_roots(const IntPoly& f)
{
    auto seq = sturm_sequence(f);
    return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

std::vector<DyadicRoot> isolate_real_roots(const IntPoly& f, long min_bits)
{
    if (f.degree() < 1) return {};
    auto seq = sturm_sequence(f);
    // Cauchy bound, rounded up to a power of two.
    Int bound = 0;
    for (int i = 0; i < f.degree(); ++i) {
        Int q = abs(f.coeffs[i]) / abs(f.coeffs.back()) + 1;
        if (q > bound) bound = q;
    }
    bound += 1;
    long e = static_cast<long>(mpz_sizeinbase(bound.get_mpz_t(), 2));

    std::vector<DyadicRoot> out;
    // Spans (a, b] with endpoints a / 2^k, b / 2^k; count = roots inside.
    struct Span {
        Int a, b;
        long k;
        int count;
    };
    Int hi = Int(1) << static_cast<mp_bitcnt_t>(e);
    Int lo = -hi;
    int c = variations_at(seq, lo, 0) - variations_at(seq, hi, 0);
    std::vector<Span> work{{lo, hi, 0, c}};
    while (!work.empty()) {
        Span s = work.back();
        work.pop_back();
        if (s.count == 0) continue;
        if (s.b - s.a == 1 && s.count == 1 && s.k >= min_bits) {
            out.push_back({s.a, s.k});
            continue;
        }
        if (s.b - s.a == 1) {
            s.a *= 2;
            s.b *= 2;
            s.k += 1;
        }
        Int mid = (s.a + s.b) / 2;
        int vl = variations_at(seq, s.a, s.k);
        int vm = variations_at(seq, mid, s.k);
        int vr = variations_at(seq, s.b, s.k);
        work.push_back({mid, s.b, s.k, vm - vr});
        work.push_back({s.a, mid, s.k, vl - vm});
    }
    std::sort(out.begin(), out.end(), [](const DyadicRoot& x, const DyadicRoot& y) {
        long k = std::max(x.k, y.k);
        Int a = x.num << static_cast<mp_bitcnt_t>(k - x.k);
        Int b = y.num << static_cast<mp_bitcnt_t>(k - y.k);
        return a < b;
    });
    return out;
}

// ---------------------------------------------------------------- FpPoly

FpPoly::FpPoly(std::vector<u64> c, u64 q) : c_(std::move(c)), q_(q)
{
    for (auto& x : c_) x %= q_;
    trim();
}

FpPoly FpPoly::from_int_poly(const IntPoly& f, u64 q)
{
    std::vector<u64> c;
    for (const auto& x : f.coeffs) c.push_back(reduce_int(x, q));
    return FpPoly(std::move(c), q);
}

FpPoly FpPoly::monomial(u64 coeff, int deg, u64 q)
{
    std::vector<u64> c(deg + 1, 0);
    c[deg] = coeff % q;
    return FpPoly(std::move(c), q);
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 FpPoly::eval(u64 x) const
{
    u64 acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addm(zmod::mulmod(acc, x, q_), *it, q_);
    return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b)
{
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = addm(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)), a.q_);
    return FpPoly(std::move(c), a.q_);
}

FpPoly operator-(const FpPoly& a, const FpPoly& b)
{
    std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = subm(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)), a.q_);
    return FpPoly(std::move(c), a.q_);
}

FpPoly operator*(const FpPoly& a, const FpPoly& b)
{
    if (a.is_zero() || b.is_zero()) return FpPoly({}, a.q_);
    std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = addm(c[i + j], zmod::mulmod(a.c_[i], b.c_[j], a.q_), a.q_);
    }
    return FpPoly(std::move(c), a.q_);
}

FpPoly FpPoly::monic() const
{
    if (is_zero()) return *this;
    u64 inv = zmod::invmod(lead(), q_);
    std::vector<u64> c(c_);
    for (auto& x : c) x = zmod::mulmod(x, inv, q_);
    return FpPoly(std::move(c), q_);
}

FpPoly FpPoly::derivative() const
{
    std::vector<u64> c;
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(zmod::mulmod(c_[i], i % q_, q_));
    return FpPoly(std::move(c), q_);
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const
{
    if (d.is_zero()) throw std::domain_error("FpPoly: division by zero");
    if (degree() < d.degree()) return {FpPoly({}, q_), *this};
    std::vector<u64> r(c_);
    std::vector<u64> quo(c_.size() - d.c_.size() + 1, 0);
    u64 inv = zmod::invmod(d.lead(), q_);
    const int dd = d.degree();
    for (int i = degree(); i >= dd; --i) {
        u64 t = zmod::mulmod(r[i], inv, q_);
        quo[i - dd] = t;
        if (t == 0) continue;
        for (int j = 0; j <= dd; ++j) r[i - dd + j] = subm(r[i - dd + j], zmod::mulmod(t, d.c_[j], q_), q_);
    }
    r.resize(dd);
    return {FpPoly(std::move(quo), q_), FpPoly(std::move(r), q_)};
}

FpPoly FpPoly::gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly FpPoly::powmod(const FpPoly& base, const Int& e, const FpPoly& m)
{
    FpPoly result({1}, m.q_);
    result = result % m;
    FpPoly b = base % m;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b) % m;
    }
    return result;
}

// ------------------------------------------------------ factorization mod q

namespace {

FpPoly x_poly(u64 q) { return FpPoly({0, 1}, q); }
FpPoly one_poly(u64 q) { return FpPoly({1}, q); }

// f(x) = g(x^q)  ->  g, over the prime field
FpPoly pth_root(const FpPoly& f)
{
    const u64 q = f.modulus();
    std::vector<u64> c;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(q)) c.push_back(f.coeff(i));
    return FpPoly(std::move(c), q);
}

void squarefree(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out)
{
    const u64 q = f.modulus();
    if (f.degree() <= 0) return;
    FpPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree(pth_root(f), mult * static_cast<int>(q), out);
        return;
    }
    FpPoly c = FpPoly::gcd(f, fp);
    FpPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = FpPoly::gcd(w, c);
        FpPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) squarefree(pth_root(c), mult * static_cast<int>(q), out);
}

// Equal-degree splitting of a squarefree product of irreducibles of degree d.
void equal_degree(const FpPoly& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    const u64 q = g.modulus();
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    Int qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), q, static_cast<unsigned long>(d));
    for (;;) {
        std::vector<u64> c(g.degree());
        for (auto& x : c) x = rng() % q;
        FpPoly a(std::move(c), q);
        if (a.degree() < 1) continue;
        FpPoly b;
        if (q == 2) {
            FpPoly t = a % g, acc = t;
            for (int i = 1; i < d; ++i) {
                t = (t * t) % g;
                acc = acc + t;
            }
            b = acc;
        } else {
            b = FpPoly::powmod(a, (qd - 1) / 2, g) - one_poly(q);
        }
        FpPoly h = FpPoly::gcd(g, b);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(g / h, d, rng, out);
            return;
        }
    }
}

bool poly_less(const FpPoly& a, const FpPoly& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(), b.coeffs().rend());
}

std::vector<std::pair<FpPoly, int>> factor_fp(const FpPoly& f)
{
    const u64 q = f.modulus();
    std::vector<std::pair<FpPoly, int>> sqf, out;
    squarefree(f.monic(), 1, sqf);
    std::mt19937_64 rng(zmod::kDefaultSeed);
    for (auto& [g0, mult] : sqf) {
        FpPoly g = g0;
        FpPoly h = x_poly(q) % g;
        for (int d = 1; 2 * d <= g.degree(); ++d) {
            h = FpPoly::powmod(h, Int(static_cast<unsigned long>(q)), g);
            FpPoly gd = FpPoly::gcd(g, h - x_poly(q));
            if (gd.degree() > 0) {
                std::vector<FpPoly> parts;
                equal_degree(gd, d, rng, parts);
                for (auto& p : parts) out.emplace_back(p, mult);
                g = g / gd;
                h = h % g;
            }
        }
        if (g.degree() > 0) out.emplace_back(g.monic(), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

}  // namespace

std::vector<std::uint64_t> roots_mod(const FpPoly& f)
{
    const u64 q = f.modulus();
    std::vector<u64> out;
    if (f.is_zero()) throw std::invalid_argument("roots_mod: zero polynomial");
    if (q <= 64) {
        for (u64 x = 0; x < q; ++x)
            if (f.eval(x) == 0) out.push_back(x);
        return out;
    }
    FpPoly g = FpPoly::gcd(f, FpPoly::powmod(x_poly(q), Int(static_cast<unsigned long>(q)), f) - x_poly(q));
    if (g.degree() <= 0) return out;
    std::mt19937_64 rng(zmod::kDefaultSeed);
    std::vector<FpPoly> lin;
    equal_degree(g, 1, rng, lin);
    for (const auto& l : lin) out.push_back(subm(0, l.coeff(0), q));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> roots_mod(const IntPoly& f, std::uint64_t q)
{
    return roots_mod(FpPoly::from_int_poly(f, q));
}

bool splits_completely_mod(const IntPoly& f, std::uint64_t q)
{
    FpPoly g = FpPoly::from_int_poly(f, q);
    if (g.degree() != f.degree()) return false;
    if (q <= static_cast<u64>(g.degree())) return false;
    FpPoly h = FpPoly::powmod(x_poly(q), Int(static_cast<unsigned long>(q)), g) - x_poly(q);
    return FpPoly::gcd(g, h).degree() == g.degree();
}

std::vector<std::pair<FpPoly, int>> factor_mod(const IntPoly& f, std::uint64_t q)
{
    FpPoly g = FpPoly::from_int_poly(f, q);
    if (g.degree() < 1) throw std::invalid_argument("factor_mod: polynomial is constant mod q");
    return factor_fp(g);
}

std::vector<std::pair<int, int>> factor_degrees_mod(const IntPoly& f, std::uint64_t q)
{
    std::vector<std::pair<int, int>> out;
    for (const auto& [g, m] : factor_mod(f, q)) out.emplace_back(g.degree(), m);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace eucl
