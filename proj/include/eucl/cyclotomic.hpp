#pragma once

// Abelian number fields as subfields of cyclotomic fields: a field is the
// fixed field of a subgroup H of Gal(Q(zeta_n)/Q) = (Z/nZ)^x.

#include "eucl/poly.hpp"
#include "eucl/zmod.hpp"

#include <optional>
#include <span>
#include <vector>

namespace eucl {

using zmod::SubgroupModN;
using zmod::u64;

struct AbelianFieldSpec {
    u64 level = 1;
    SubgroupModN fixing;
    u64 degree = 1;

    // Degree is derived as the index of h.
    static AbelianFieldSpec make(u64 level, SubgroupModN h);
    static AbelianFieldSpec from_generators(u64 level, std::span<const u64> gens);
    static AbelianFieldSpec rationals();

    // Same field (compared at the conductor).
    friend bool same_field(const AbelianFieldSpec& a, const AbelianFieldSpec& b);
    // Structural equality of the representation.
    bool operator==(const AbelianFieldSpec&) const = default;
};

u64 conductor(const AbelianFieldSpec& spec);
AbelianFieldSpec at_conductor(const AbelianFieldSpec& spec);
// Re-expression at a multiple of the current level.
AbelianFieldSpec at_level(const AbelianFieldSpec& spec, u64 level);

// Index-p subgroups of (Z/nZ)^x, each returned at its conductor, sorted by
// (conductor, elements).
std::vector<AbelianFieldSpec> enumerate_prime_degree_subfields(u64 n, u64 p);

// Inertia subgroup at q inside (Z/level)^x.
SubgroupModN inertia_subgroup(u64 level, u64 q);
u64 ramification_index(const AbelianFieldSpec& spec, u64 q);

AbelianFieldSpec compositum(const AbelianFieldSpec& a, const AbelianFieldSpec& b);
bool is_totally_real(const AbelianFieldSpec& spec);
// True when a is a subfield of b.
bool is_subfield(const AbelianFieldSpec& a, const AbelianFieldSpec& b);

struct FrobeniusClass {
    u64 representative = 1;  // q mod level
    bool is_identity = false;
    std::vector<u64> coset;  // sorted
};
FrobeniusClass frobenius_class(const AbelianFieldSpec& spec, u64 q);

// Cosets of the fixing subgroup at the conductor, each sorted; coset of 1 first.
std::vector<std::vector<u64>> galois_cosets(const AbelianFieldSpec& spec);

// Minimal polynomial of a Gaussian period of the field (at its conductor);
// falls back to other traces of roots of unity when the periods coincide.
IntPoly defining_polynomial(const AbelianFieldSpec& spec);

// Candidate whose split-prime fingerprint matches poly; nullopt when none.
// Throws ResourceError if two candidates stay indistinguishable.
std::optional<AbelianFieldSpec> identify_field(const IntPoly& poly, const std::vector<AbelianFieldSpec>& candidates,
                                               std::size_t prime_count = 200);

}  // namespace eucl
