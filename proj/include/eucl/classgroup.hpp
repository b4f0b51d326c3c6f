#pragma once

// Class groups of totally real fields, the analytic class number of cyclic
// prime-degree abelian fields, genus numbers and Hilbert class field status.

#include "eucl/cyclotomic.hpp"
#include "eucl/order.hpp"
#include "eucl/units.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace eucl {

// (alpha) = prod P_j^{exponents_j} over the factor base.
struct RelationWitness {
    std::vector<long> exponents;
    Ideal ideal;
    Elt generator;
};

struct ClassGroupResult {
    long class_number = 1;
    std::vector<long> structure;  // invariant factors > 1, each dividing the next
    bool is_cyclic = true;
    std::optional<PrimeIdeal> generator;  // a factor-base prime whose class has order h
    std::vector<PrimeIdeal> factor_base;  // all primes of norm <= Minkowski bound
    std::vector<RelationWitness> relation_log;
    // exponent vectors over the factor base whose ideals were shown non-principal
    std::vector<std::vector<long>> nonprincipal_log;
    UnitSystem units;
};

struct ClassGroupConfig {
    std::uint64_t max_nodes = kDefaultMaxNodes;
    int max_rounds = 8;
    // sup-norm radius of the log-space cells used for principality tests
    long double cell_radius = 1.0L;
};

// Generator of a when principal; nullopt is a proof of non-principality: the
// log-unit fundamental domain is covered by cells and each cell exhausted.
std::optional<Elt> principal_generator(const MaximalOrder& o, const UnitSystem& units, const Ideal& a,
                                       const ClassGroupConfig& cfg = {});

ClassGroupResult class_group(const MaximalOrder& o, const ClassGroupConfig& cfg = {});
ClassGroupResult class_group(const MaximalOrder& o, const UnitSystem& units, const ClassGroupConfig& cfg = {});

// True when the witness element generates exactly the stated ideal product.
bool verify_relation(const MaximalOrder& o, const std::vector<PrimeIdeal>& factor_base, const RelationWitness& w);

// h from the class number formula via L(1, chi) in closed form; the field must
// be cyclic of odd prime degree. std::domain_error when the value is not within
// 1e-4 of a positive integer.
long analytic_class_number(const AbelianFieldSpec& spec, const Ball& regulator);
// The unrounded value h R_true / R.
Ball analytic_class_number_value(const AbelianFieldSpec& spec, const Ball& regulator);

enum class HcfStatus { certified, trivial, unknown };
const char* to_string(HcfStatus s);

struct GenusCertificate {
    long genus_number = 1;
    std::vector<std::pair<u64, u64>> ramified_primes;  // (q, e(q))
    HcfStatus hcf_abelian = HcfStatus::unknown;
};

GenusCertificate genus_number(const AbelianFieldSpec& spec);
// Maximal subfield of Q(zeta_conductor) containing K and unramified over K at
// finite primes: the compositum of the prime-power conductor components.
AbelianFieldSpec genus_field(const AbelianFieldSpec& spec);
GenusCertificate hcf_abelian_certificate(const AbelianFieldSpec& spec, const ClassGroupResult& cg);

}  // namespace eucl
