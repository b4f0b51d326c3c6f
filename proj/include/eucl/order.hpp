#pragma once

// Rings of integers of number fields given by a monic irreducible polynomial.
// Elements are integer coordinate vectors over an integral basis
// omega_0 = 1, omega_1, ..., omega_{n-1}; omega_i = (sum_{j<=i} B[i][j] theta^j) / den.

#include "eucl/ball.hpp"
#include "eucl/linalg.hpp"
#include "eucl/poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace eucl {

using Elt = std::vector<Int>;

class MaximalOrder {
public:
    // Throws std::invalid_argument for reducible or non-monic input.
    explicit MaximalOrder(IntPoly poly);

    const IntPoly& polynomial() const { return poly_; }
    int degree() const { return n_; }
    const Int& discriminant() const { return disc_; }
    const Int& polynomial_discriminant() const { return poly_disc_; }
    // [O : Z[theta]]
    const Int& index() const { return index_; }
    const IntMatrix& basis_numerators() const { return basis_; }
    const Int& basis_denominator() const { return den_; }
    // Primes q with q^2 | disc(poly), and whether Z[theta] was already q-maximal.
    const std::vector<std::pair<Int, bool>>& dedekind_log() const { return dedekind_log_; }

    Elt one() const;
    Elt from_int(const Int& a) const;
    // theta^k expressed in the integral basis.
    Elt theta_power(int k) const;
    // Element given by power-basis coefficients; throws when not integral.
    Elt from_power_basis(const std::vector<Rat>& c) const;
    std::vector<Rat> to_power_basis(const Elt& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt scale(const Elt& a, const Int& c) const;
    Elt pow(const Elt& a, unsigned long e) const;
    // a / c when every coordinate is divisible by c.
    std::optional<Elt> div_exact(const Elt& a, const Int& c) const;
    // Exact inverse in the field for units; nullopt for non-units.
    std::optional<Elt> unit_inverse(const Elt& u) const;
    bool is_zero(const Elt& a) const;

    // Matrix of multiplication by a: row i = coordinates of a * omega_i.
    IntMatrix mul_matrix(const Elt& a) const;
    Int norm(const Elt& a) const;
    Int trace(const Elt& a) const;

    // Real embeddings in ascending order of the root of the polynomial;
    // throws when the field is not totally real.
    std::vector<Ball> embed(const Elt& a, mpfr_prec_t prec) const;
    std::vector<long double> embed_ld(const Elt& a) const;
    int real_embeddings() const { return real_roots_; }

    // multiplication constants: omega_i omega_j = sum_k table[i][j][k] omega_k
    const Int& table(int i, int j, int k) const { return mult_[(i * n_ + j) * n_ + k]; }

private:
    void compute_table();
    void enlarge_at(const Int& q);
    bool dedekind_maximal_at(const Int& q) const;
    const std::vector<std::vector<Ball>>& basis_embeddings(mpfr_prec_t prec) const;

    IntPoly poly_;
    int n_ = 0;
    Int poly_disc_, disc_, index_ = 1;
    IntMatrix basis_;
    Int den_ = 1;
    std::vector<Int> mult_;
    std::vector<std::pair<Int, bool>> dedekind_log_;
    int real_roots_ = 0;

    mutable std::mutex cache_mutex_;
    mutable std::map<mpfr_prec_t, std::shared_ptr<std::vector<std::vector<Ball>>>> emb_cache_;
    mutable std::vector<std::vector<long double>> emb_ld_;
};

std::shared_ptr<const MaximalOrder> maximal_order(const IntPoly& poly);

// Integral ideal as an upper-triangular HNF (rows over the integral basis).
struct Ideal {
    IntMatrix hnf;
    bool operator==(const Ideal&) const = default;
};

Ideal ideal_from_generators(const MaximalOrder& o, const std::vector<Elt>& gens);
Ideal unit_ideal(const MaximalOrder& o);
Ideal principal_ideal(const MaximalOrder& o, const Elt& a);
Ideal ideal_mul(const MaximalOrder& o, const Ideal& a, const Ideal& b);
Ideal ideal_pow(const MaximalOrder& o, const Ideal& a, unsigned e);
Int ideal_norm(const Ideal& a);
bool ideal_contains(const Ideal& a, const Elt& x);
// Basis elements of the ideal (rows of the HNF).
std::vector<Elt> ideal_basis(const Ideal& a);

struct PrimeIdeal {
    Int q;
    int e = 1;
    int f = 1;
    Ideal ideal;
    Elt generator;  // (q, generator) = ideal
    Elt valuation_helper;  // beta with beta * P in qO, beta not in qO
    Int norm() const;
    bool operator==(const PrimeIdeal& o) const { return q == o.q && ideal == o.ideal; }
};

// (q) = prod P_i^{e_i}; primes sorted by (f, HNF).
std::vector<PrimeIdeal> factor_rational_prime(const MaximalOrder& o, const Int& q);
// v_P(a) for nonzero a.
int valuation(const MaximalOrder& o, const PrimeIdeal& p, const Elt& a);

}  // namespace eucl
