#include "eucl/lattice.hpp"

#include "eucl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace eucl {

namespace {

constexpr long kScaleBits = 96;
constexpr mpfr_prec_t kEmbedPrec = 192;

void normalize_sign(Elt& x)
{
    for (const auto& c : x) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& d : x) d = -d;
        return;
    }
}

std::vector<Elt> sorted_unique(std::vector<Elt> v)
{
    for (auto& x : v) normalize_sign(x);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

std::vector<long double> embed_accurate(const MaximalOrder& o, const Elt& x)
{
    std::size_t bits = 0;
    for (const auto& c : x) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    for (mpfr_prec_t prec = 128 + 2 * static_cast<mpfr_prec_t>(bits);; prec *= 2) {
        if (prec > (1 << 20)) throw IndeterminateError("embed_accurate: precision cap reached");
        auto e = o.embed(x, prec);
        std::vector<long double> out;
        bool sharp = true;
        for (const auto& b : e) {
            if (b.contains_zero() || b.radius_double() > 1e-30 * std::fabs(b.mid_double())) {
                sharp = false;
                break;
            }
            out.push_back(b.mid_long_double());
        }
        if (sharp) return out;
    }
}

std::vector<std::vector<long>> fincke_pohst(const std::vector<std::vector<long double>>& gram, long double bound,
                                            std::uint64_t max_nodes)
{
    const int n = static_cast<int>(gram.size());
    if (n == 0) return {};
    // q[i][i] and q[i][j] (j > i) with Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
    std::vector<std::vector<long double>> q = gram;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < n; ++k)
            for (int l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
        if (!(q[i][i] > 0)) throw InconsistencyError("fincke_pohst: Gram matrix not positive definite");
    }

    std::vector<std::vector<long>> out;
    std::vector<long> x(n, 0);
    std::uint64_t nodes = 0;
    const long double slack = 1e-12L * (1 + std::fabs(bound));

    std::function<void(int, long double, bool)> rec = [&](int i, long double rem, bool zero_above) {
        long double u = 0;
        for (int j = i + 1; j < n; ++j) u += q[i][j] * x[j];
        long double r = std::sqrt(std::max<long double>(rem + slack, 0) / q[i][i]);
        long lo = static_cast<long>(std::ceil(-u - r));
        long hi = static_cast<long>(std::floor(-u + r));
        if (zero_above) lo = std::max(lo, 0L);
        for (long v = lo; v <= hi; ++v) {
            if (++nodes > max_nodes) throw ResourceError("fincke_pohst: node cap exceeded");
            long double t = rem - q[i][i] * (v + u) * (v + u);
            if (t < -slack) continue;
            x[i] = v;
            if (i == 0) {
                if (!(zero_above && v == 0)) out.push_back(x);
            } else {
                rec(i - 1, t, zero_above && v == 0);
            }
        }
        x[i] = 0;
    };
    rec(n - 1, bound, true);
    return out;
}

std::vector<Elt> reduced_ideal_basis(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& log_scale)
{
    const int n = o.degree();
    auto basis = ideal_basis(a);
    // extreme weights need more bits before the rounded rows stay independent
    IntMatrix m;
    for (long bits = kScaleBits;; bits *= 2) {
        if (bits > 16 * kScaleBits) throw ResourceError("reduced_ideal_basis: weights too extreme");
        const mpfr_prec_t prec = bits + kEmbedPrec;
        std::vector<Ball> w;
        for (int k = 0; k < n; ++k) {
            long double v = log_scale.empty() ? 0 : log_scale.at(k);
            w.push_back(exp(Ball::from_long_double(-v, prec)));
        }
        std::vector<std::vector<Ball>> rows;
        long top = 0;
        for (const auto& b : basis) {
            auto e = o.embed(b, prec);
            for (int k = 0; k < n; ++k) {
                e[k] *= w[k];
                top = std::max(top, e[k].exponent());
            }
            rows.push_back(std::move(e));
        }
        m = IntMatrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) m(i, k) = rows[i][k].scaled_mid(bits - top);
        if (determinant(m) != 0) break;
    }
    auto t = lll(m).transform;
    std::vector<Elt> out;
    for (int i = 0; i < n; ++i) {
        Elt x(n, 0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) x[k] += t(i, j) * basis[j][k];
        out.push_back(std::move(x));
    }
    return out;
}

std::vector<Elt> weighted_short_elements(const MaximalOrder& o, const Ideal& a, const std::vector<long double>& log_scale,
                                         long double bound, std::uint64_t max_nodes)
{
    if (!(bound > 0)) throw std::invalid_argument("short_elements: bound must be positive");
    const int n = o.degree();
    auto red = reduced_ideal_basis(o, a, log_scale);
    std::vector<std::vector<long double>> emb;
    for (const auto& b : red) {
        auto e = embed_accurate(o, b);
        for (int k = 0; k < n; ++k) e[k] *= std::exp(-(log_scale.empty() ? 0 : log_scale[k]));
        emb.push_back(std::move(e));
    }
    std::vector<std::vector<long double>> gram(n, std::vector<long double>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) gram[i][j] += emb[i][k] * emb[j][k];
    long double padded = bound * (1 + 1e-9L) + 1e-9L;
    std::vector<Elt> out;
    for (const auto& x : fincke_pohst(gram, padded, max_nodes)) {
        Elt y(n, 0);
        for (int i = 0; i < n; ++i)
            if (x[i] != 0)
                for (int k = 0; k < n; ++k) y[k] += x[i] * red[i][k];
        out.push_back(std::move(y));
    }
    return sorted_unique(std::move(out));
}

Int t2_norm(const MaximalOrder& o, const Elt& x)
{
    return o.trace(o.mul(x, x));
}

std::vector<Elt> short_elements(const MaximalOrder& o, const Ideal& a, long double t2_bound, std::uint64_t max_nodes)
{
    auto cand = weighted_short_elements(o, a, {}, t2_bound, max_nodes);
    Int cap(static_cast<double>(std::floor(t2_bound)));
    std::vector<std::pair<Int, Elt>> keep;
    for (auto& x : cand) {
        Int t = t2_norm(o, x);
        if (t <= cap) keep.emplace_back(std::move(t), std::move(x));
    }
    std::sort(keep.begin(), keep.end());
    std::vector<Elt> out;
    for (auto& [t, x] : keep) out.push_back(std::move(x));
    return out;
}

}  // namespace eucl
