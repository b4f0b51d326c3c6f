#pragma once

// Short elements of ideals: LLL on the scaled Minkowski embedding, then
// Fincke-Pohst enumeration in the reduced basis.

#include "eucl/order.hpp"

#include <cstdint>
#include <vector>

namespace eucl {

inline constexpr std::uint64_t kDefaultMaxNodes = 20'000'000;

// Nonzero x with x G x^T <= bound, one per sign pair (last nonzero entry
// positive). G must be positive definite. ResourceError past max_nodes.
std::vector<std::vector<long>> fincke_pohst(const std::vector<std::vector<long double>>& gram, long double bound,
                                            std::uint64_t max_nodes);

// LLL-reduced Z-basis of the ideal for the form sum_k (sigma_k(x) e^{-v_k})^2.
// An empty log_scale means v = 0.
std::vector<Elt> reduced_ideal_basis(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& log_scale);

// All nonzero x in a with T2(x) = Tr(x^2) <= t2_bound, one per sign pair,
// sign normalized (first nonzero coordinate positive) and sorted by (T2, x).
// The T2 filter is exact.
std::vector<Elt> short_elements(const MaximalOrder& o, const Ideal& a, long double t2_bound,
                                std::uint64_t max_nodes = kDefaultMaxNodes);

// Every nonzero x in a with sum_k (sigma_k(x) e^{-v_k})^2 <= bound is
// returned (one per sign pair, normalized and sorted); a few extra elements
// just above the bound may appear, callers filter exactly.
std::vector<Elt> weighted_short_elements(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& log_scale,
                                         long double bound, std::uint64_t max_nodes = kDefaultMaxNodes);

// Real embeddings rounded to long double from balls whose precision grows with
// the coordinate size, so cancellation cannot spoil small embeddings.
std::vector<long double> embed_accurate(const MaximalOrder& o, const Elt& x);

// T2(x) = Tr(x^2), exact.
Int t2_norm(const MaximalOrder& o, const Elt& x);

}  // namespace eucl
