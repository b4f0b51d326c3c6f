#include "eucl/linalg.hpp"

#include "eucl/zmod.hpp"

#include <algorithm>
#include <stdexcept>

namespace eucl {

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const
{
    return {a_.begin() + static_cast<std::ptrdiff_t>(i * cols_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void IntMatrix::set_row(std::size_t i, const std::vector<Int>& v)
{
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
}

void IntMatrix::append_row(const std::vector<Int>& v)
{
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw std::invalid_argument("IntMatrix: row length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::sub_row(std::size_t i, std::size_t j, const Int& c)
{
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) -= c * (*this)(j, k);
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Int& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

Int determinant(const IntMatrix& m0)
{
    if (m0.rows() != m0.cols()) throw std::invalid_argument("determinant: square matrix required");
    const std::size_t n = m0.rows();
    if (n == 0) return 1;
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

IntMatrix hnf(const IntMatrix& m0)
{
    IntMatrix m = m0;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (m(i, j) != 0 && (best == rows || abs(m(i, j)) < abs(m(best, j)))) best = i;
            if (best == rows) break;
            m.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (m(i, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(r, j).get_mpz_t());
                m.sub_row(i, r, q);
                if (m(i, j) != 0) done = false;
            }
            if (done) break;
        }
        if (r < rows && m(r, j) != 0) {
            if (m(r, j) < 0)
                for (std::size_t k = 0; k < cols; ++k) m(r, k) = -m(r, k);
            for (std::size_t i = 0; i < r; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(r, j).get_mpz_t());
                m.sub_row(i, r, q);
            }
            pivot_col.push_back(j);
            ++r;
        }
    }
    IntMatrix out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < cols; ++k) out(i, k) = m(i, k);
    return out;
}

IntMatrix hnf_insert(const IntMatrix& h, std::vector<Int> v)
{
    const std::size_t n = h.cols();
    if (h.rows() != n) throw std::invalid_argument("hnf_insert: square HNF required");
    Int d = 1;
    for (std::size_t i = 0; i < n; ++i) d *= h(i, i);
    if (d == 0) throw std::invalid_argument("hnf_insert: singular HNF");
    for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    IntMatrix s = h;
    s.append_row(v);
    IntMatrix out = hnf(s);
    if (out.rows() != n) throw std::logic_error("hnf_insert: rank changed");
    return out;
}

std::vector<Int> elementary_divisors(const IntMatrix& m0)
{
    if (m0.rows() != m0.cols()) throw std::invalid_argument("elementary_divisors: square matrix required");
    IntMatrix a = m0;
    const std::size_t n = a.rows();
    Int d = abs(determinant(a));
    if (d == 0) throw std::invalid_argument("elementary_divisors: singular matrix");
    // d Z^n lies in the row lattice, so work modulo d
    auto reduce = [&](Int& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); };
    IntMatrix b(2 * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = a(i, j);
            reduce(b(i, j));
        }
    for (std::size_t i = 0; i < n; ++i) b(n + i, i) = d;
    a = hnf(b);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block
            std::size_t bi = n, bj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == n || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break;
            a.swap_rows(t, bi);
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, bj));
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                a.sub_row(i, t, q);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                if (q != 0)
                    for (std::size_t i = 0; i < n; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        for (std::size_t k = 0; k < n; ++k) a(t, k) += a(i, k);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    std::vector<Int> out;
    for (std::size_t i = 0; i < n; ++i) {
        Int x = abs(a(i, i));
        out.push_back(x == 0 ? d : gcd(x, d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<Rat>> solve_left(const IntMatrix& m, const std::vector<Rat>& v)
{
    const std::size_t n = m.rows();
    if (m.cols() != n || v.size() != n) throw std::invalid_argument("solve_left: shape mismatch");
    // augmented system m^T x = v
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(j, i);
        a[i][n] = v[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

LllResult lll(const IntMatrix& basis, long dn, long dd)
{
    const std::size_t n = basis.rows(), m = basis.cols();
    IntMatrix b = basis;
    IntMatrix h = IntMatrix::identity(n);
    if (n <= 1) return {b, h};
    auto dot = [&](std::size_t i, std::size_t j) {
        Int s = 0;
        for (std::size_t c = 0; c < m; ++c) s += b(i, c) * b(j, c);
        return s;
    };
    // 1-based indices below; d[0] = 1
    std::vector<Int> d(n + 1);
    std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1));
    auto B = [&](std::size_t i) { return i - 1; };
    d[0] = 1;
    d[1] = dot(0, 0);
    if (d[1] == 0) throw std::invalid_argument("lll: dependent rows");
    std::size_t k = 2, kmax = 1;

    auto red = [&](std::size_t kk, std::size_t l) {
        Int twice = 2 * lam[kk][l];
        if (abs(twice) <= d[l]) return;
        // nearest integer to lam / d
        Int q;
        Int num = 2 * lam[kk][l] + d[l];
        Int den = 2 * d[l];
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        h.sub_row(B(kk), B(l), q);
        b.sub_row(B(kk), B(l), q);
        lam[kk][l] -= q * d[l];
        for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
    };
    auto swapk = [&](std::size_t kk) {
        h.swap_rows(B(kk), B(kk - 1));
        b.swap_rows(B(kk), B(kk - 1));
        for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
        Int l = lam[kk][kk - 1];
        Int bb = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
        for (std::size_t i = kk + 1; i <= kmax; ++i) {
            Int t = lam[i][kk];
            lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
            lam[i][kk - 1] = (bb * t + l * lam[i][kk]) / d[kk];
        }
        d[kk - 1] = bb;
    };

    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 1; j <= k; ++j) {
                Int u = dot(B(k), B(j));
                for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
                if (j < k)
                    lam[k][j] = u;
                else
                    d[k] = u;
            }
            if (d[k] == 0) throw std::invalid_argument("lll: dependent rows");
        }
        for (;;) {
            red(k, k - 1);
            Int lhs = dd * d[k] * d[k - 2];
            Int rhs = dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1];
            if (lhs < rhs) {
                swapk(k);
                k = std::max<std::size_t>(2, k - 1);
                continue;
            }
            for (std::size_t l = k - 1; l-- > 1;) red(k, l);
            ++k;
            break;
        }
    }
    return {b, h};
}

// ----------------------------------------------------------------- F_q

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref_mod(ModMatrix& a, std::size_t cols, std::uint64_t q)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] % q == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        std::uint64_t inv = zmod::invmod(a[r][c] % q, q);
        for (auto& x : a[r]) x = zmod::mulmod(x % q, inv, q);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r) continue;
            std::uint64_t f = a[i][c] % q;
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                std::uint64_t t = zmod::mulmod(f, a[r][j], q);
                std::uint64_t x = a[i][j] % q;
                a[i][j] = x >= t ? x - t : x + q - t;
            }
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

}  // namespace

ModMatrix kernel_mod(const ModMatrix& a0, std::size_t cols, std::uint64_t q)
{
    ModMatrix a = a0;
    auto piv = rref_mod(a, cols, q);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    ModMatrix out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<std::uint64_t> x(cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = (q - a[i][f] % q) % q;
        out.push_back(std::move(x));
    }
    return out;
}

std::size_t rank_mod(ModMatrix a, std::uint64_t q)
{
    if (a.empty()) return 0;
    return rref_mod(a, a[0].size(), q).size();
}

ModMatrix row_basis_mod(ModMatrix a, std::uint64_t q)
{
    if (a.empty()) return a;
    rref_mod(a, a[0].size(), q);
    return a;
}

}  // namespace eucl
