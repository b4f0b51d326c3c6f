#pragma once

// Primes p = u1 mod f up to a height X whose (p - 1)/2 is prime or a
// two-prime product in a window, residue symbols of units at primes above p,
// and primitive-root statistics.

#include "eucl/cyclotomic.hpp"
#include "eucl/order.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eucl {

struct SieveParams {
    u64 u1 = 3;
    u64 f = 16;
    double a = 0.30;
    double b = 0.45;
    double epsilon = 0.099;
    u64 X = 1'000'000;
    bool operator==(const SieveParams&) const = default;
};

// Largest epsilon with b/(1 - epsilon) < 1/2, less a 1e-3 margin.
double default_epsilon(double b);
// std::invalid_argument naming the first violated condition.
void validate(const SieveParams& params);

enum class HalfType { prime, semiprime };
const char* to_string(HalfType t);

struct SieveRecord {
    u64 p = 0;
    HalfType half_type = HalfType::prime;
    u64 q1 = 0, q2 = 0;  // (p - 1)/2 = q1 q2 with q1 <= q2; q1 = (p - 1)/2, q2 = 1 when prime
    std::vector<int> signature;  // Legendre symbols of the units at the chosen prime above p
    int cell = 0;  // 1..8 once partitioned
    int winner_index = 0;  // 1-based unit index whose signed value is a primitive root; 0 if none
    u64 winner = 0;  // that primitive root mod p
    bool operator==(const SieveRecord&) const = default;
};

// Label for (p - 1)/2 with the semiprime window lo < q1 < hi (or lo <= q1 <= hi
// when inclusive); nullopt when neither shape applies.
std::optional<SieveRecord> classify_half(u64 p, long double lo, long double hi, bool inclusive);

// Primes p = u mod v in [lo, hi], from a segmented sieve (segments of 2^20).
std::vector<u64> progression_primes(u64 u, u64 v, u64 lo, u64 hi);

// p = u1 mod f in (X^(1-eps), X) with (p - 1)/2 prime or q1 q2, X^a <= q1 <= X^b.
std::vector<SieveRecord> heath_brown_set(const SieveParams& params);

// p = u1 mod f, p <= X, with (p - 1)/2 prime or q1 q2, p^a < q1 < p^(b/(1-eps)).
// Every p must split completely in K (InconsistencyError otherwise).
std::vector<SieveRecord> m_epsilon_set(const AbelianFieldSpec& K, const SieveParams& params);

struct SieveUnit {
    std::shared_ptr<const MaximalOrder> order;
    Elt value;
};

// Legendre symbol of each unit at the degree-1 prime (p, theta - r) of its own
// field, r the smallest root of the defining polynomial mod p.
std::vector<int> residue_signature(u64 p, const std::vector<SieveUnit>& units);

// Cell of the tuple c_i = -signature_i: n = 1 + sum_{c_i = -1} 2^(i-1).
int partition_cell(const std::vector<int>& signature);

struct Partition {
    std::array<u64, 8> counts{};
    int dominant = 1;  // argmax, smallest index on ties
};
// Fills record.cell from record.signature.
Partition partition_m(std::vector<SieveRecord>& records);

// For each record the signed units c_i eps_i mod p (c_i = -signature_i) are
// tested for order p - 1 with the known factorization of p - 1; the first hit is
// the winner. Returns the number of records with a winner.
u64 primitive_root_scan(std::vector<SieveRecord>& records, const std::vector<SieveUnit>& units);

// Order p - 1 test from scratch (trial factorization of p - 1).
bool is_primitive_root(u64 g, u64 p);

// count / (X / log^2 X); X >= 100.
double density_ratio(u64 count, u64 X);

struct SieveReport {
    SieveParams params;
    u64 J_count = 0;
    u64 M_count = 0;
    std::vector<SieveRecord> records;  // M records
    std::array<u64, 8> M_n_counts{};
    int dominant_n0 = 1;
    u64 primitive_root_count = 0;
    double J_density = 0;
    double M_density = 0;
    double primitive_root_density = 0;
    bool operator==(const SieveReport&) const = default;
};

SieveReport run_sieve(const SieveParams& params, const AbelianFieldSpec& K, const std::vector<SieveUnit>& units);

struct LadderRung {
    u64 X = 0;
    u64 J_count = 0, M_count = 0, primitive_root_count = 0;
    double J_density = 0, M_density = 0;
    bool operator==(const LadderRung&) const = default;
};
// Rungs X_0, 2 X_0, 4 X_0, ... up to params.X.
std::vector<LadderRung> density_ladder(const SieveReport& full, u64 start);

// CSV header and rows: p, half_type, q1, sig1, sig2, sig3, winner.
std::string sieve_csv(const SieveReport& report);

}  // namespace eucl
