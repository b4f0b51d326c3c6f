#pragma once

// Exact linear algebra over Z, Q and F_q.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace eucl {

using Int = mpz_class;
using Rat = mpq_class;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Int>& v);
    void append_row(const std::vector<Int>& v);
    void swap_rows(std::size_t i, std::size_t j);
    // row i -= c * row j
    void sub_row(std::size_t i, std::size_t j, const Int& c);

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    bool operator==(const IntMatrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& m);

// Row Hermite normal form of the lattice spanned by the rows: upper echelon,
// positive pivots, entries above each pivot reduced into [0, pivot). Zero
// rows are dropped.
IntMatrix hnf(const IntMatrix& m);

// Inserts v into the lattice of a square full-rank HNF h and returns the HNF
// of the enlarged lattice. Entries of v are reduced modulo det(h) first.
IntMatrix hnf_insert(const IntMatrix& h, std::vector<Int> v);

// Elementary divisors d_1 | d_2 | ... of a square nonsingular matrix.
std::vector<Int> elementary_divisors(const IntMatrix& m);

// x with x * m = v for square nonsingular m (row combination), or nullopt.
std::optional<std::vector<Rat>> solve_left(const IntMatrix& m, const std::vector<Rat>& v);

// Integral LLL (fraction-free) on the rows with parameter delta = dn / dd.
// Returns the transform t with reduced = t * basis; rows must be independent.
struct LllResult {
    IntMatrix reduced;
    IntMatrix transform;
};
LllResult lll(const IntMatrix& basis, long dn = 99, long dd = 100);

// Matrices over F_q as row vectors of residues.
using ModMatrix = std::vector<std::vector<std::uint64_t>>;
// Basis of {x : a x = 0} for an r x c matrix a.
ModMatrix kernel_mod(const ModMatrix& a, std::size_t cols, std::uint64_t q);
// Rank over F_q.
std::size_t rank_mod(ModMatrix a, std::uint64_t q);
// Row-reduced basis of the row space.
ModMatrix row_basis_mod(ModMatrix a, std::uint64_t q);

}  // namespace eucl
