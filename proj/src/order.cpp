#include "eucl/order.hpp"

#include "eucl/errors.hpp"
#include "eucl/zmod.hpp"

#include <algorithm>
#include <stdexcept>

namespace eucl {

namespace {

using u64 = std::uint64_t;

u64 mod_u64(const Int& a, u64 q)
{
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), q);
    return r.get_ui();
}

// reduce a polynomial (constant first) modulo the monic f
std::vector<Int> reduce_mod_poly(std::vector<Int> c, const IntPoly& f)
{
    const int n = f.degree();
    for (int d = static_cast<int>(c.size()) - 1; d >= n; --d) {
        if (c[d] == 0) continue;
        Int t = c[d];
        c[d] = 0;
        for (int k = 0; k < n; ++k) c[d - n + k] -= t * f.coeffs[k];
    }
    c.resize(n);
    return c;
}

bool certainly_irreducible(const IntPoly& f)
{
    const int n = f.degree();
    if (n == 1) return true;
    // integer roots of a monic polynomial divide the constant term
    if (n <= 3) {
        if (f.coeffs[0] == 0) return false;
        Int c = abs(f.coeffs[0]);
        // test every divisor of |c|
        std::vector<Int> divs{1};
        for (const auto& [p, e] : factor_integer(c)) {
            std::size_t cur = divs.size();
            Int pk = 1;
            for (int i = 0; i < e; ++i) {
                pk *= p;
                for (std::size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pk);
            }
        }
        for (const auto& d : divs)
            if (f.eval(d) == 0 || f.eval(-d) == 0) return false;
        return true;
    }
    // an irreducible reduction at a prime not dividing the discriminant
    Int disc = discriminant(f);
    if (disc == 0) return false;
    for (u64 q = 2; q < 200000; ++q) {
        if (!zmod::is_prime(q) || mpz_divisible_ui_p(disc.get_mpz_t(), q)) continue;
        auto deg = factor_degrees_mod(f, q);
        if (deg.size() == 1 && deg[0].first == n) return true;
    }
    throw std::invalid_argument("maximal_order: could not certify irreducibility");
}

// Lower-triangular canonical basis of the lattice spanned by rows (columns are
// power-basis coordinates), obtained from the HNF of the column-reversed matrix.
IntMatrix lower_hnf(const IntMatrix& m)
{
    const std::size_t n = m.cols();
    IntMatrix r(m.rows(), n);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = m(i, n - 1 - j);
    IntMatrix h = hnf(r);
    if (h.rows() != n) throw InconsistencyError("lower_hnf: lattice not of full rank");
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = h(n - 1 - i, n - 1 - j);
    return out;
}

// ---------------------------------------------------------- algebra O/qO

struct ModAlgebra {
    int n;
    u64 q;
    std::vector<u64> t;  // table mod q

    ModAlgebra(const MaximalOrder& o, u64 q_) : n(o.degree()), q(q_), t(static_cast<std::size_t>(n) * n * n)
    {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) t[(i * n + j) * n + k] = mod_u64(o.table(i, j, k), q);
    }
    std::vector<u64> mul(const std::vector<u64>& a, const std::vector<u64>& b) const
    {
        std::vector<u64> c(n, 0);
        for (int i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (b[j] == 0) continue;
                u64 ab = zmod::mulmod(a[i], b[j], q);
                for (int k = 0; k < n; ++k) c[k] = (c[k] + zmod::mulmod(ab, t[(i * n + j) * n + k], q)) % q;
            }
        }
        return c;
    }
    std::vector<u64> pow(std::vector<u64> a, u64 e) const
    {
        std::vector<u64> r = unit(0);
        while (e) {
            if (e & 1) r = mul(r, a);
            e >>= 1;
            if (e) a = mul(a, a);
        }
        return r;
    }
    std::vector<u64> unit(int i) const
    {
        std::vector<u64> v(n, 0);
        v[i] = 1 % q;
        return v;
    }
    std::vector<u64> lin(const std::vector<u64>& a, u64 ca, const std::vector<u64>& b, u64 cb) const
    {
        std::vector<u64> c(n);
        for (int i = 0; i < n; ++i) c[i] = (zmod::mulmod(a[i], ca, q) + zmod::mulmod(b[i], cb, q)) % q;
        return c;
    }
    bool is_zero(const std::vector<u64>& a) const
    {
        return std::all_of(a.begin(), a.end(), [](u64 x) { return x == 0; });
    }
    // rows x -> x * m
    std::vector<u64> apply(const std::vector<u64>& x, const ModMatrix& m) const
    {
        std::vector<u64> y(n, 0);
        for (int i = 0; i < n; ++i)
            if (x[i])
                for (int k = 0; k < n; ++k) y[k] = (y[k] + zmod::mulmod(x[i], m[i][k], q)) % q;
        return y;
    }
};

ModMatrix transpose_mod(const ModMatrix& a, std::size_t cols)
{
    ModMatrix t(cols, std::vector<u64>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

// {x : x m = 0}
ModMatrix left_kernel(const ModMatrix& m, std::size_t n, u64 q)
{
    return kernel_mod(transpose_mod(m, n), m.size(), q);
}

// q-radical of O/qO: kernel of Frobenius iterated until q^j >= n
ModMatrix radical_mod(const ModAlgebra& a)
{
    const int n = a.n;
    ModMatrix frob;
    for (int i = 0; i < n; ++i) frob.push_back(a.pow(a.unit(i), a.q));
    u64 qj = a.q;
    int j = 1;
    while (qj < static_cast<u64>(n)) {
        qj *= a.q;
        ++j;
    }
    ModMatrix img;
    for (int i = 0; i < n; ++i) {
        auto x = a.unit(i);
        for (int s = 0; s < j; ++s) x = a.apply(x, frob);
        img.push_back(x);
    }
    return left_kernel(img, n, a.q);
}

IntMatrix lift_with_q(const ModMatrix& vecs, int n, const Int& q)
{
    IntMatrix m(0, n);
    for (const auto& v : vecs) {
        std::vector<Int> r;
        for (u64 x : v) r.emplace_back(static_cast<unsigned long>(x));
        m.append_row(r);
    }
    for (int i = 0; i < n; ++i) {
        std::vector<Int> r(n, 0);
        r[i] = q;
        m.append_row(r);
    }
    return m;
}

}  // namespace

// ------------------------------------------------------------ MaximalOrder

MaximalOrder::MaximalOrder(IntPoly poly) : poly_(std::move(poly))
{
    if (!poly_.is_monic() || poly_.degree() < 1) throw std::invalid_argument("maximal_order: monic polynomial required");
    n_ = poly_.degree();
    if (!certainly_irreducible(poly_)) throw std::invalid_argument("maximal_order: polynomial is reducible");
    poly_disc_ = eucl::discriminant(poly_);
    basis_ = IntMatrix::identity(n_);
    den_ = 1;
    compute_table();
    for (const auto& [q, e] : factor_integer(poly_disc_)) {
        if (e < 2) continue;
        bool ok = dedekind_maximal_at(q);
        dedekind_log_.emplace_back(q, ok);
        if (!ok) enlarge_at(q);
    }
    Int diag = 1;
    for (int i = 0; i < n_; ++i) diag *= basis_(i, i);
    Int dn;
    mpz_pow_ui(dn.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(n_));
    if (!mpz_divisible_p(dn.get_mpz_t(), diag.get_mpz_t())) throw InconsistencyError("maximal_order: non-integral index");
    index_ = dn / diag;
    disc_ = poly_disc_ / (index_ * index_);
    // independent check via the trace form of the integral basis
    IntMatrix tf(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            Elt e(n_, 0);
            for (int k = 0; k < n_; ++k) e[k] = table(i, j, k);
            tf(i, j) = trace(e);
        }
    if (determinant(tf) != disc_) throw InconsistencyError("maximal_order: trace-form discriminant mismatch");
    real_roots_ = count_real_roots(poly_);
    if (real_roots_ == n_) {
        const auto& t = basis_embeddings(128);
        emb_ld_.assign(n_, std::vector<long double>(n_));
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) emb_ld_[i][k] = t[i][k].mid_long_double();
    }
}

void MaximalOrder::compute_table()
{
    mult_.assign(static_cast<std::size_t>(n_) * n_ * n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            std::vector<Int> prod(2 * n_ - 1, 0);
            for (int a = 0; a <= i; ++a)
                for (int b = 0; b <= j; ++b) prod[a + b] += basis_(i, a) * basis_(j, b);
            prod = reduce_mod_poly(std::move(prod), poly_);
            std::vector<Rat> c;
            for (auto& x : prod) {
                c.emplace_back(x, den_ * den_);
                c.back().canonicalize();
            }
            Elt e = from_power_basis(c);
            for (int k = 0; k < n_; ++k) {
                mult_[(i * n_ + j) * n_ + k] = e[k];
                mult_[(j * n_ + i) * n_ + k] = e[k];
            }
        }
}

bool MaximalOrder::dedekind_maximal_at(const Int& qz) const
{
    if (!qz.fits_ulong_p()) throw ResourceError("maximal_order: prime too large for the Dedekind test");
    const u64 q = qz.get_ui();
    auto fac = factor_mod(poly_, q);
    FpPoly g({1}, q), h({1}, q);
    for (const auto& [t, e] : fac) {
        g = g * t;
        for (int k = 1; k < e; ++k) h = h * t;
    }
    // F = (g h - f) / q over Z with lifts in [0, q)
    auto lift = [](const FpPoly& p) {
        std::vector<Int> c;
        for (u64 x : p.coeffs()) c.emplace_back(static_cast<unsigned long>(x));
        return c;
    };
    auto gl = lift(g), hl = lift(h);
    std::vector<Int> gh(gl.size() + hl.size() - 1, 0);
    for (std::size_t i = 0; i < gl.size(); ++i)
        for (std::size_t j = 0; j < hl.size(); ++j) gh[i + j] += gl[i] * hl[j];
    std::vector<Int> fc(std::max(gh.size(), poly_.coeffs.size()), 0);
    for (std::size_t i = 0; i < fc.size(); ++i) {
        Int a = i < gh.size() ? gh[i] : Int(0);
        Int b = i < poly_.coeffs.size() ? poly_.coeffs[i] : Int(0);
        fc[i] = (a - b) / qz;
    }
    FpPoly big_f = FpPoly::from_int_poly(IntPoly(fc), q);
    FpPoly z = FpPoly::gcd(FpPoly::gcd(big_f, g), h);
    return z.degree() == 0;
}

void MaximalOrder::enlarge_at(const Int& qz)
{
    if (!qz.fits_ulong_p()) throw ResourceError("maximal_order: prime too large for enlargement");
    const u64 q = qz.get_ui();
    for (;;) {
        ModAlgebra alg(*this, q);
        ModMatrix rad = radical_mod(alg);
        IntMatrix ih = hnf(lift_with_q(rad, n_, qz));
        // y with y * beta_k in qI for every basis element beta_k of I
        std::vector<Elt> beta = ideal_basis(Ideal{ih});
        ModMatrix cond;  // rows indexed by (k, m), columns by i
        std::vector<std::vector<std::vector<u64>>> coords(n_, std::vector<std::vector<u64>>(n_));
        for (int i = 0; i < n_; ++i) {
            Elt wi(n_, 0);
            wi[i] = 1;
            for (int k = 0; k < n_; ++k) {
                Elt prod = mul(wi, beta[k]);
                // coordinates over the basis of I (upper triangular)
                std::vector<Int> x(n_);
                Elt rest = prod;
                for (int c = 0; c < n_; ++c) {
                    if (!mpz_divisible_p(rest[c].get_mpz_t(), ih(c, c).get_mpz_t()))
                        throw InconsistencyError("maximal_order: radical is not an ideal");
                    x[c] = rest[c] / ih(c, c);
                    for (int d = c; d < n_; ++d) rest[d] -= x[c] * ih(c, d);
                }
                std::vector<u64> xm;
                for (auto& v : x) xm.push_back(mod_u64(v, q));
                coords[i][k] = std::move(xm);
            }
        }
        for (int k = 0; k < n_; ++k)
            for (int m = 0; m < n_; ++m) {
                std::vector<u64> row(n_);
                for (int i = 0; i < n_; ++i) row[i] = coords[i][k][m];
                cond.push_back(std::move(row));
            }
        ModMatrix ker = kernel_mod(cond, n_, q);
        if (ker.empty()) return;
        // new order (1/q)(U), U = lift(ker) + qO, in power coordinates
        IntMatrix u = lift_with_q(ker, n_, qz);
        IntMatrix pw = u * basis_;
        IntMatrix nb = lower_hnf(pw);
        Int nden = den_ * qz;
        Int g = nden;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j <= i; ++j) g = gcd(g, nb(i, j));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j <= i; ++j) nb(i, j) /= g;
        nden /= g;
        if (nb == basis_ && nden == den_) return;
        basis_ = nb;
        den_ = nden;
        compute_table();
    }
}

Elt MaximalOrder::one() const
{
    Elt e(n_, 0);
    e[0] = 1;
    return e;
}

Elt MaximalOrder::from_int(const Int& a) const
{
    Elt e(n_, 0);
    e[0] = a;
    return e;
}

Elt MaximalOrder::theta_power(int k) const
{
    std::vector<Int> c(std::max(k + 1, n_), 0);
    c[k] = 1;
    c = reduce_mod_poly(std::move(c), poly_);
    std::vector<Rat> r(c.begin(), c.end());
    return from_power_basis(r);
}

Elt MaximalOrder::from_power_basis(const std::vector<Rat>& c) const
{
    // solve sum_i x_i B[i][k] = den c_k, B lower triangular
    std::vector<Rat> rhs(n_);
    for (int k = 0; k < n_; ++k) rhs[k] = den_ * c[k];
    Elt x(n_);
    for (int k = n_ - 1; k >= 0; --k) {
        Rat v = rhs[k] / basis_(k, k);
        if (v.get_den() != 1) throw std::invalid_argument("from_power_basis: element is not integral");
        x[k] = v.get_num();
        for (int j = 0; j <= k; ++j) rhs[j] -= Rat(x[k] * basis_(k, j));
    }
    return x;
}

std::vector<Rat> MaximalOrder::to_power_basis(const Elt& a) const
{
    std::vector<Rat> c(n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j <= i; ++j) {
            Rat t(a[i] * basis_(i, j), den_);
            t.canonicalize();
            c[j] += t;
        }
    return c;
}

Elt MaximalOrder::add(const Elt& a, const Elt& b) const
{
    Elt c(n_);
    for (int i = 0; i < n_; ++i) c[i] = a[i] + b[i];
    return c;
}

Elt MaximalOrder::sub(const Elt& a, const Elt& b) const
{
    Elt c(n_);
    for (int i = 0; i < n_; ++i) c[i] = a[i] - b[i];
    return c;
}

Elt MaximalOrder::neg(const Elt& a) const
{
    Elt c(n_);
    for (int i = 0; i < n_; ++i) c[i] = -a[i];
    return c;
}

Elt MaximalOrder::mul(const Elt& a, const Elt& b) const
{
    Elt c(n_, 0);
    Int ab;
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            ab = a[i] * b[j];
            for (int k = 0; k < n_; ++k) {
                const Int& t = mult_[(i * n_ + j) * n_ + k];
                if (t != 0) c[k] += ab * t;
            }
        }
    }
    return c;
}

Elt MaximalOrder::scale(const Elt& a, const Int& c) const
{
    Elt r(n_);
    for (int i = 0; i < n_; ++i) r[i] = a[i] * c;
    return r;
}

Elt MaximalOrder::pow(const Elt& a, unsigned long e) const
{
    Elt r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::optional<Elt> MaximalOrder::div_exact(const Elt& a, const Int& c) const
{
    Elt r(n_);
    for (int i = 0; i < n_; ++i) {
        if (!mpz_divisible_p(a[i].get_mpz_t(), c.get_mpz_t())) return std::nullopt;
        r[i] = a[i] / c;
    }
    return r;
}

std::optional<Elt> MaximalOrder::unit_inverse(const Elt& u) const
{
    Int nm = norm(u);
    if (nm != 1 && nm != -1) return std::nullopt;
    std::vector<Rat> e(n_, 0);
    e[0] = 1;
    auto x = solve_left(mul_matrix(u), e);
    if (!x) return std::nullopt;
    Elt r(n_);
    for (int i = 0; i < n_; ++i) {
        if ((*x)[i].get_den() != 1) return std::nullopt;
        r[i] = (*x)[i].get_num();
    }
    return r;
}

bool MaximalOrder::is_zero(const Elt& a) const
{
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

IntMatrix MaximalOrder::mul_matrix(const Elt& a) const
{
    IntMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i) {
        Elt wi(n_, 0);
        wi[i] = 1;
        m.set_row(i, mul(a, wi));
    }
    return m;
}

Int MaximalOrder::norm(const Elt& a) const
{
    return determinant(mul_matrix(a));
}

Int MaximalOrder::trace(const Elt& a) const
{
    Int t = 0;
    for (int j = 0; j < n_; ++j) {
        if (a[j] == 0) continue;
        for (int i = 0; i < n_; ++i) t += a[j] * mult_[(j * n_ + i) * n_ + i];
    }
    return t;
}

const std::vector<std::vector<Ball>>& MaximalOrder::basis_embeddings(mpfr_prec_t prec) const
{
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = emb_cache_.find(prec);
    if (it != emb_cache_.end()) return *it->second;
    if (real_roots_ != n_) throw std::invalid_argument("embeddings: field is not totally real");
    auto roots = isolate_real_roots(poly_, prec + 32);
    auto table = std::make_shared<std::vector<std::vector<Ball>>>();
    const mpfr_prec_t w = prec + 64;
    for (int i = 0; i < n_; ++i) {
        std::vector<Ball> row;
        for (int k = 0; k < n_; ++k) {
            Ball t = Ball::from_dyadic_interval(roots[k].num, roots[k].k, w);
            Ball acc(0L, w), pw(1L, w);
            for (int j = 0; j <= i; ++j) {
                if (basis_(i, j) != 0) acc += Ball(basis_(i, j), w) * pw;
                pw *= t;
            }
            acc /= Ball(den_, w);
            row.push_back(std::move(acc));
        }
        table->push_back(std::move(row));
    }
    auto [pos, ok] = emb_cache_.emplace(prec, table);
    return *pos->second;
}

std::vector<Ball> MaximalOrder::embed(const Elt& a, mpfr_prec_t prec) const
{
    const auto& t = basis_embeddings(prec);
    std::vector<Ball> out;
    const mpfr_prec_t w = prec + 64;
    for (int k = 0; k < n_; ++k) {
        Ball s(0L, w);
        for (int i = 0; i < n_; ++i)
            if (a[i] != 0) s += Ball(a[i], w) * t[i][k];
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<long double> MaximalOrder::embed_ld(const Elt& a) const
{
    if (emb_ld_.empty()) throw std::invalid_argument("embeddings: field is not totally real");
    std::vector<long double> out(n_, 0.0L);
    for (int i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        long double c = a[i].get_d();
        for (int k = 0; k < n_; ++k) out[k] += c * emb_ld_[i][k];
    }
    return out;
}

std::shared_ptr<const MaximalOrder> maximal_order(const IntPoly& poly)
{
    return std::make_shared<const MaximalOrder>(poly);
}

// ------------------------------------------------------------------ ideals

std::vector<Elt> ideal_basis(const Ideal& a)
{
    std::vector<Elt> out;
    for (std::size_t i = 0; i < a.hnf.rows(); ++i) out.push_back(a.hnf.row(i));
    return out;
}

Ideal ideal_from_generators(const MaximalOrder& o, const std::vector<Elt>& gens)
{
    const int n = o.degree();
    IntMatrix m(0, n);
    for (const auto& g : gens) {
        if (o.is_zero(g)) continue;
        IntMatrix mm = o.mul_matrix(g);
        for (int i = 0; i < n; ++i) m.append_row(mm.row(i));
    }
    if (m.rows() == 0) throw std::invalid_argument("ideal_from_generators: zero ideal");
    Ideal id{hnf(m)};
    if (id.hnf.rows() != static_cast<std::size_t>(n)) throw InconsistencyError("ideal_from_generators: rank deficit");
    return id;
}

Ideal unit_ideal(const MaximalOrder& o)
{
    return Ideal{IntMatrix::identity(o.degree())};
}

Ideal principal_ideal(const MaximalOrder& o, const Elt& a)
{
    return ideal_from_generators(o, {a});
}

Ideal ideal_mul(const MaximalOrder& o, const Ideal& a, const Ideal& b)
{
    const int n = o.degree();
    Int nn = ideal_norm(a) * ideal_norm(b);
    IntMatrix m(0, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Int> r(n, 0);
        r[i] = nn;
        m.append_row(r);
    }
    auto ba = ideal_basis(a), bb = ideal_basis(b);
    for (const auto& x : ba)
        for (const auto& y : bb) {
            Elt p = o.mul(x, y);
            for (auto& c : p) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), nn.get_mpz_t());
            m.append_row(p);
        }
    return Ideal{hnf(m)};
}

Ideal ideal_pow(const MaximalOrder& o, const Ideal& a, unsigned e)
{
    Ideal r = unit_ideal(o), b = a;
    while (e) {
        if (e & 1) r = ideal_mul(o, r, b);
        e >>= 1;
        if (e) b = ideal_mul(o, b, b);
    }
    return r;
}

Int ideal_norm(const Ideal& a)
{
    Int d = 1;
    for (std::size_t i = 0; i < a.hnf.rows(); ++i) d *= a.hnf(i, i);
    return d;
}

bool ideal_contains(const Ideal& a, const Elt& x)
{
    const std::size_t n = a.hnf.cols();
    Elt rest = x;
    for (std::size_t c = 0; c < n; ++c) {
        if (!mpz_divisible_p(rest[c].get_mpz_t(), a.hnf(c, c).get_mpz_t())) return false;
        Int t = rest[c] / a.hnf(c, c);
        for (std::size_t d = c; d < n; ++d) rest[d] -= t * a.hnf(c, d);
    }
    return true;
}

Int PrimeIdeal::norm() const
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f));
    return r;
}

namespace {

bool hnf_less(const IntMatrix& a, const IntMatrix& b)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != b(i, j)) return a(i, j) < b(i, j);
    return false;
}

// smallest-norm-first combinations of the ideal basis until (q, alpha) = P
Elt two_element_generator(const MaximalOrder& o, const Ideal& p, const Int& q)
{
    const int n = o.degree();
    auto basis = ideal_basis(p);
    Elt qe = o.from_int(q);
    auto works = [&](const Elt& a) { return !o.is_zero(a) && ideal_from_generators(o, {qe, a}) == p; };
    for (const auto& b : basis)
        if (works(b)) return b;
    for (int r = 1; r <= 4; ++r) {
        std::vector<int> c(n, -r);
        for (;;) {
            int mx = 0;
            for (int x : c) mx = std::max(mx, std::abs(x));
            if (mx == r) {
                Elt a(n, 0);
                for (int i = 0; i < n; ++i)
                    if (c[i]) a = o.add(a, o.scale(basis[i], Int(c[i])));
                if (works(a)) return a;
            }
            int i = 0;
            while (i < n && c[i] == r) c[i++] = -r;
            if (i == n) break;
            ++c[i];
        }
    }
    throw ResourceError("two-element form not found");
}

}  // namespace

std::vector<PrimeIdeal> factor_rational_prime(const MaximalOrder& o, const Int& qz)
{
    if (!qz.fits_ulong_p() || !zmod::is_prime(qz.get_ui())) throw std::invalid_argument("factor_rational_prime: q must be a 64-bit prime");
    const u64 q = qz.get_ui();
    const int n = o.degree();
    ModAlgebra alg(o, q);
    ModMatrix rad = radical_mod(alg);

    // Berlekamp subalgebra {x : x^q = x}
    ModMatrix fm;
    for (int i = 0; i < n; ++i) {
        auto x = alg.pow(alg.unit(i), q);
        x[i] = (x[i] + q - 1) % q;
        fm.push_back(std::move(x));
    }
    ModMatrix zb = left_kernel(fm, n, q);
    const std::size_t g = zb.size();

    std::vector<std::vector<u64>> idem{alg.unit(0)};
    for (const auto& z : zb) {
        if (idem.size() == g) break;
        std::vector<std::vector<u64>> next;
        for (const auto& e : idem) {
            auto w = alg.mul(z, e);
            // minimal polynomial of w in the algebra eA (identity e)
            ModMatrix pows{e};
            std::vector<u64> mp;
            for (;;) {
                pows.push_back(alg.mul(pows.back(), w));
                auto dep = left_kernel(pows, n, q);
                std::vector<u64>* rel = nullptr;
                for (auto& d : dep)
                    if (d.back() != 0) rel = &d;
                if (rel) {
                    u64 inv = zmod::invmod(rel->back(), q);
                    for (auto x : *rel) mp.push_back(zmod::mulmod(x, inv, q));
                    break;
                }
            }
            auto roots = roots_mod(FpPoly(mp, q));
            if (roots.size() + 1 != mp.size()) throw InconsistencyError("factor_rational_prime: non-split minimal polynomial");
            for (u64 a : roots) {
                std::vector<u64> ea = e;
                for (u64 b : roots) {
                    if (b == a) continue;
                    // (w - b e) / (a - b)
                    u64 inv = zmod::invmod((a + q - b) % q, q);
                    auto fac = alg.lin(w, inv, e, zmod::mulmod((q - b) % q, inv, q));
                    ea = alg.mul(ea, fac);
                }
                if (!alg.is_zero(ea)) next.push_back(std::move(ea));
            }
        }
        idem = std::move(next);
    }
    if (idem.size() != g) throw InconsistencyError("factor_rational_prime: idempotent count mismatch");

    std::vector<PrimeIdeal> out;
    for (const auto& e : idem) {
        // maximal ideal (1 - e)A + R
        ModMatrix span = rad;
        ModMatrix eA;
        auto one_minus_e = alg.lin(alg.unit(0), 1, e, q - 1);
        for (int i = 0; i < n; ++i) {
            span.push_back(alg.mul(one_minus_e, alg.unit(i)));
            eA.push_back(alg.mul(e, alg.unit(i)));
        }
        ModMatrix mbasis = row_basis_mod(span, q);
        PrimeIdeal p;
        p.q = qz;
        p.f = n - static_cast<int>(mbasis.size());
        std::size_t dim_e = rank_mod(eA, q);
        if (p.f <= 0 || dim_e % p.f != 0) throw InconsistencyError("factor_rational_prime: bad residue degree");
        p.e = static_cast<int>(dim_e / p.f);
        p.ideal = Ideal{hnf(lift_with_q(mbasis, n, qz))};
        if (ideal_norm(p.ideal) != p.norm()) throw InconsistencyError("factor_rational_prime: norm mismatch");
        // beta with beta P in qO
        ModMatrix cond;
        auto pb = ideal_basis(p.ideal);
        std::vector<std::vector<Elt>> prods(n);
        for (int i = 0; i < n; ++i) {
            Elt wi(n, 0);
            wi[i] = 1;
            for (const auto& b : pb) prods[i].push_back(o.mul(wi, b));
        }
        for (int k = 0; k < n; ++k)
            for (int m = 0; m < n; ++m) {
                std::vector<u64> row(n);
                for (int i = 0; i < n; ++i) row[i] = mod_u64(prods[i][k][m], q);
                cond.push_back(std::move(row));
            }
        auto ker = kernel_mod(cond, n, q);
        if (ker.empty()) throw InconsistencyError("factor_rational_prime: no valuation helper");
        for (u64 x : ker.front()) p.valuation_helper.emplace_back(static_cast<unsigned long>(x));
        p.generator = two_element_generator(o, p.ideal, qz);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        if (a.f != b.f) return a.f < b.f;
        return hnf_less(a.ideal.hnf, b.ideal.hnf);
    });
    int total = 0;
    for (const auto& p : out) total += p.e * p.f;
    if (total != n) throw InconsistencyError("factor_rational_prime: sum of e f differs from the degree");
    return out;
}

int valuation(const MaximalOrder& o, const PrimeIdeal& p, const Elt& a)
{
    if (o.is_zero(a)) throw std::invalid_argument("valuation: zero element");
    int v = 0;
    Elt x = a;
    for (;;) {
        Elt y = o.mul(x, p.valuation_helper);
        auto d = o.div_exact(y, p.q);
        if (!d) return v;
        x = std::move(*d);
        ++v;
    }
}

}  // namespace eucl
