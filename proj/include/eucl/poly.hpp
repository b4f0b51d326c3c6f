#pragma once

// Integer polynomials and polynomials over prime fields F_q.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eucl {

using Int = mpz_class;
using Rat = mpq_class;

// Coefficients are stored constant term first.
struct IntPoly {
    std::vector<Int> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> c);
    static IntPoly from_longs(std::initializer_list<long> c);
    // Accepts forms like "x^3 - x^2 - 30x - 27" or "x^3-x^2-30*x-27".
    static IntPoly parse(std::string_view text);

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    const Int& operator[](std::size_t i) const { return coeffs[i]; }
    Int eval(const Int& x) const;
    std::string to_string() const;

    bool operator==(const IntPoly&) const = default;
};

IntPoly derivative(const IntPoly& f);
// Newton power sums s_0..s_{k-1} of the roots of a monic polynomial.
std::vector<Int> power_sums(const IntPoly& f, int k);
Int discriminant(const IntPoly& f);

// Real root of a squarefree polynomial located in [num / 2^k, (num + 1) / 2^k].
struct DyadicRoot {
    Int num;
    long k = 0;
};

// Sturm-sequence isolation; every interval has width at most 2^-min_bits and
// holds exactly one root. Roots ascending.
std::vector<DyadicRoot> isolate_real_roots(const IntPoly& f, long min_bits);
int count_real_roots(const IntPoly& f);

// Factorization of |a| for a != 0: trial division to 10^6, then the 64-bit
// factorizer; larger cofactors must be prime or a prime square.
std::vector<std::pair<Int, int>> factor_integer(const Int& a);

// Polynomials over F_q, q prime, coefficients in [0, q), constant first,
// no trailing zeros (the zero polynomial is empty).
class FpPoly {
public:
    using u64 = std::uint64_t;

    FpPoly() = default;
    FpPoly(std::vector<u64> c, u64 q);
    static FpPoly from_int_poly(const IntPoly& f, u64 q);
    static FpPoly monomial(u64 coeff, int deg, u64 q);

    u64 modulus() const { return q_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<u64>& coeffs() const { return c_; }
    u64 coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    u64 lead() const { return c_.back(); }
    u64 eval(u64 x) const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    bool operator==(const FpPoly& o) const { return q_ == o.q_ && c_ == o.c_; }

    FpPoly monic() const;
    FpPoly derivative() const;
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
    FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
    FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }

    static FpPoly gcd(FpPoly a, FpPoly b);
    // base^e mod m
    static FpPoly powmod(const FpPoly& base, const Int& e, const FpPoly& m);

private:
    void trim();
    std::vector<u64> c_;
    u64 q_ = 2;
};

// Distinct roots in F_q, ascending.
std::vector<std::uint64_t> roots_mod(const IntPoly& f, std::uint64_t q);
std::vector<std::uint64_t> roots_mod(const FpPoly& f);
// True when f splits into deg f distinct linear factors mod q.
bool splits_completely_mod(const IntPoly& f, std::uint64_t q);

// Irreducible factorization pattern of f mod q: sorted (degree, multiplicity)
// pairs, one per irreducible factor.
std::vector<std::pair<int, int>> factor_degrees_mod(const IntPoly& f, std::uint64_t q);
// The distinct monic irreducible factors of f mod q with multiplicities.
std::vector<std::pair<FpPoly, int>> factor_mod(const IntPoly& f, std::uint64_t q);

}  // namespace eucl
