#pragma once

// Arithmetic in Z and in the unit groups (Z/nZ)^x.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace eucl::zmod {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline constexpr u64 kDefaultSeed = 0x5eedULL;

u64 mulmod(u64 a, u64 b, u64 n);
u64 powmod(u64 a, u64 e, u64 n);
// Inverse of a modulo n; throws std::invalid_argument when gcd(a, n) != 1.
u64 invmod(u64 a, u64 n);

// Deterministic Miller-Rabin (first 13 prime bases), exact for all 64-bit n.
bool is_prime(u64 n);

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, unsigned>> factors;  // primes strictly increasing

    std::vector<u64> primes() const;
    u64 multiply_out() const;
    bool operator==(const Factorization&) const = default;
};

// Trial division to 10^6, then Pollard rho (Brent) driven by a seeded
// generator. Output is independent of the seed.
Factorization factorize(u64 n, u64 seed = kDefaultSeed);

u64 euler_phi(u64 n);
u64 carmichael_lambda(u64 n);
std::vector<u64> divisors(u64 n);
unsigned valuation(u64 n, u64 p);

// (Z/nZ)^x as a direct product of cyclic groups, one (or two, at 2^k)
// per prime-power factor of n, lifted through the CRT.
struct UnitGroupModN {
    u64 modulus = 1;
    std::vector<u64> generators;
    std::vector<u64> generator_orders;

    u64 order() const;
    // Every element, in mixed-radix order of the exponent vectors.
    std::vector<u64> elements() const;
};

UnitGroupModN unit_group(u64 n);

u64 element_order(u64 x, u64 n);

// c^(2^m) mod n where 2^m exactly divides the order of c.
u64 strip_two_part(u64 c, u64 n);

int jacobi_symbol(i64 a, u64 n);
int legendre_symbol(u64 a, u64 p);

// A subgroup of (Z/nZ)^x, stored as its sorted element list.
class SubgroupModN {
public:
    SubgroupModN() = default;
    // Elements must already form a subgroup; they are sorted and deduplicated.
    SubgroupModN(u64 modulus, std::vector<u64> elements);

    u64 modulus() const { return modulus_; }
    const std::vector<u64>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(u64 x) const;

    bool operator==(const SubgroupModN&) const = default;

private:
    u64 modulus_ = 1;
    std::vector<u64> elements_{0};
};

SubgroupModN subgroup_closure(std::span<const u64> gens, u64 n);
SubgroupModN full_unit_group(u64 n);
SubgroupModN intersect(const SubgroupModN& a, const SubgroupModN& b);
// Preimage under (Z/mZ)^x <- (Z/nZ)^x for n a multiple of the subgroup's modulus.
SubgroupModN lift(const SubgroupModN& h, u64 n);
// Image under reduction to a divisor m of the modulus.
SubgroupModN reduce(const SubgroupModN& h, u64 m);
// Kernel of (Z/nZ)^x -> (Z/mZ)^x for m | n.
SubgroupModN reduction_kernel(u64 n, u64 m);

// Order of x modulo the subgroup h (smallest k >= 1 with x^k in h).
u64 order_modulo(u64 x, const SubgroupModN& h);

}  // namespace eucl::zmod
