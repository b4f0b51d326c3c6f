#pragma once

// Unit groups of totally real fields: fundamental systems, regulators and
// multiplicative independence.

#include "eucl/ball.hpp"
#include "eucl/lattice.hpp"
#include "eucl/order.hpp"

#include <cstdint>
#include <vector>

namespace eucl {

struct UnitSystem {
    std::vector<Elt> units;
    Ball regulator;
    bool saturated = false;
};

struct UnitSearchConfig {
    // grid spacing of the log-space scan and the cap on its sup-radius
    long double grid_step = 1.0L;
    long double max_radius = 32.0L;
    std::uint64_t max_nodes = kDefaultMaxNodes;
    unsigned saturation_bound = 7;
};

// log|sigma_k(x)| for every real embedding.
std::vector<long double> log_embedding(const MaximalOrder& o, const Elt& x);

// Scans the trace-zero hyperplane of log space on a grid; at each grid point v
// a weighted search finds every unit whose log vector lies within half a step.
// The successive minima of the found units (sup-norm over all but the last
// embedding) give the basis, then l-th roots for l <= saturation_bound are
// extracted. ResourceError when the radius cap is reached first.
UnitSystem find_units(const MaximalOrder& o, const UnitSearchConfig& cfg = {});

// Replaces basis elements by l-th roots of products prod u_i^{e_i} (0 <= e_i < l)
// for every prime l <= bound until none exists; the index of the unit
// lattice spanned then has no prime factor <= bound.
std::vector<Elt> saturate(const MaximalOrder& o, std::vector<Elt> units, unsigned bound,
                          std::uint64_t max_nodes = kDefaultMaxNodes);

// |det| of log|sigma_k(u_i)| with the embedding of largest total |log| dropped,
// relative error <= 1e-9. std::domain_error for dependent units.
Ball regulator(const MaximalOrder& o, const std::vector<Elt>& units);

// True iff no nontrivial product of integer powers is +-1. Candidate
// relations from LLL on the log vectors are verified exactly; IndeterminateError
// if precision runs out undecided.
bool multiplicatively_independent(const MaximalOrder& o, const std::vector<Elt>& elems);
// Same question for elements of two fields K1, K2 with K1 and K2 meeting only in
// Q, viewed inside the compositum.
bool multiplicatively_independent(const MaximalOrder& k1, const std::vector<Elt>& e1, const MaximalOrder& k2,
                                  const std::vector<Elt>& e2);

// prod x_i^{e_i}; negative exponents need units.
Elt power_product(const MaximalOrder& o, const std::vector<Elt>& xs, const std::vector<long>& e);

}  // namespace eucl
