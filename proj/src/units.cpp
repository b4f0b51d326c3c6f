#include "eucl/units.hpp"

#include "eucl/errors.hpp"
#include "eucl/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>

namespace eucl {

namespace {

constexpr long double kIndependenceTol = 1e-10L;

// Gram determinant of the rows relative to the product of squared norms.
long double relative_gram_det(const std::vector<std::vector<long double>>& rows)
{
    const std::size_t k = rows.size();
    std::vector<std::vector<long double>> g(k, std::vector<long double>(k, 0));
    long double scale = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = 0; c < rows[i].size(); ++c) g[i][j] += rows[i][c] * rows[j][c];
        scale *= g[i][i];
    }
    if (scale == 0) return 0;
    long double det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t p = c;
        for (std::size_t r = c; r < k; ++r)
            if (std::fabs(g[r][c]) > std::fabs(g[p][c])) p = r;
        if (g[p][c] == 0) return 0;
        std::swap(g[p], g[c]);
        if (p != c) det = -det;
        det *= g[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            long double f = g[r][c] / g[c][c];
            for (std::size_t j = c; j < k; ++j) g[r][j] -= f * g[c][j];
        }
    }
    return std::fabs(det) / scale;
}

Ball ball_det(const std::vector<std::vector<Ball>>& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols)
{
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    const mpfr_prec_t prec = m[0][0].precision();
    Ball s(prec);
    std::vector<std::size_t> rest(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        std::vector<std::size_t> sub;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (c != j) sub.push_back(cols[c]);
        Ball t = m[rows[0]][cols[j]] * ball_det(m, rest, sub);
        if (j % 2) s -= t;
        else s += t;
    }
    return s;
}

// nullopt when some embedding is not separated from zero at this precision
std::optional<std::vector<Ball>> log_embedding_ball(const MaximalOrder& o, const Elt& x, mpfr_prec_t prec)
{
    auto e = o.embed(x, prec);
    for (auto& b : e) {
        if (b.contains_zero()) return std::nullopt;
        b = log(abs(b));
    }
    return e;
}

// num = r * den for a rational r
std::optional<Rat> rational_ratio(const Elt& num, const Elt& den)
{
    std::size_t k = 0;
    while (k < den.size() && den[k] == 0) ++k;
    if (k == den.size()) return std::nullopt;
    for (std::size_t j = 0; j < den.size(); ++j)
        if (num[j] * den[k] != num[k] * den[j]) return std::nullopt;
    Rat r(num[k], den[k]);
    r.canonicalize();
    return r;
}

// num / den of prod x_i^{c_i}
std::pair<Elt, Elt> split_product(const MaximalOrder& o, const std::vector<Elt>& xs, const std::vector<long>& c)
{
    Elt num = o.one(), den = o.one();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (c[i] > 0) num = o.mul(num, o.pow(xs[i], c[i]));
        if (c[i] < 0) den = o.mul(den, o.pow(xs[i], -c[i]));
    }
    return {num, den};
}

struct FieldPart {
    const MaximalOrder* o;
    const std::vector<Elt>* elems;
};

// Shared driver: log rows are laid out over the product of the embedding sets
// of the parts, each part contributing its own coordinate to every slot.
bool independent_impl(const std::vector<FieldPart>& parts)
{
    std::size_t k = 0, m = 1;
    for (const auto& p : parts) {
        k += p.elems->size();
        m *= static_cast<std::size_t>(p.o->degree());
        for (const auto& x : *p.elems)
            if (p.o->is_zero(x)) throw std::invalid_argument("multiplicatively_independent: zero element");
    }
    if (k == 0) return true;

    constexpr mpfr_prec_t kCap = 2048;
    for (mpfr_prec_t prec = 128; prec <= kCap; prec *= 2) {
        std::vector<std::vector<Ball>> rows;
        std::size_t stride = m;
        bool separated = true;
        for (const auto& p : parts) {
            const std::size_t d = p.o->degree();
            stride /= d;
            for (const auto& x : *p.elems) {
                auto lg = log_embedding_ball(*p.o, x, prec);
                if (!lg) {
                    separated = false;
                    break;
                }
                std::vector<Ball> r;
                for (std::size_t s = 0; s < m; ++s) r.push_back((*lg)[(s / stride) % d]);
                rows.push_back(std::move(r));
            }
            if (!separated) break;
        }
        if (!separated) continue;
        // certified real independence
        if (k <= m) {
            std::vector<std::vector<Ball>> g(k, std::vector<Ball>(k, Ball(prec)));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    for (std::size_t s = 0; s < m; ++s) g[i][j] += rows[i][s] * rows[j][s];
            std::vector<std::size_t> idx(k);
            for (std::size_t i = 0; i < k; ++i) idx[i] = i;
            if (ball_det(g, idx, idx).is_positive()) return true;
        }
        // integer relation search
        long top = 0;
        for (const auto& r : rows)
            for (const auto& b : r) top = std::max(top, b.exponent());
        const long shift = static_cast<long>(prec) - 32 - top;
        IntMatrix lat(k, k + m);
        for (std::size_t i = 0; i < k; ++i) {
            lat(i, i) = 1;
            for (std::size_t s = 0; s < m; ++s) lat(i, k + s) = rows[i][s].scaled_mid(shift);
        }
        auto red = lll(lat).reduced;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<long> c(k);
            bool small = true;
            for (std::size_t j = 0; j < k && small; ++j) {
                if (abs(red(i, j)) > 64) small = false;
                else c[j] = red(i, j).get_si();
            }
            if (!small || std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) continue;
            Rat total = 1;
            bool verified = true;
            std::size_t off = 0;
            for (const auto& p : parts) {
                std::vector<long> cp(c.begin() + off, c.begin() + off + p.elems->size());
                off += p.elems->size();
                auto [num, den] = split_product(*p.o, *p.elems, cp);
                auto r = rational_ratio(num, den);
                if (!r) {
                    verified = false;
                    break;
                }
                total *= *r;
            }
            if (verified && abs(total) == 1) return false;
        }
    }
    throw IndeterminateError("multiplicatively_independent: undecided at the precision cap");
}

}  // namespace

std::vector<long double> log_embedding(const MaximalOrder& o, const Elt& x)
{
    auto e = embed_accurate(o, x);
    for (auto& v : e) v = std::log(std::fabs(v));
    return e;
}

Elt power_product(const MaximalOrder& o, const std::vector<Elt>& xs, const std::vector<long>& e)
{
    Elt r = o.one();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (e[i] == 0) continue;
        Elt b = xs[i];
        if (e[i] < 0) {
            auto inv = o.unit_inverse(xs[i]);
            if (!inv) throw std::invalid_argument("power_product: negative exponent on a non-unit");
            b = *inv;
        }
        r = o.mul(r, o.pow(b, static_cast<unsigned long>(std::labs(e[i]))));
    }
    return r;
}

Ball regulator(const MaximalOrder& o, const std::vector<Elt>& units)
{
    const std::size_t n = o.degree();
    if (units.size() + 1 != n) throw std::invalid_argument("regulator: need degree - 1 units");
    for (const auto& u : units)
        if (abs(o.norm(u)) != 1) throw std::invalid_argument("regulator: element is not a unit");
    if (units.empty()) return Ball(1, 128);
    std::vector<std::size_t> rows(units.size()), cols;
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    constexpr mpfr_prec_t kCap = 4096;
    for (mpfr_prec_t prec = 128; prec <= kCap; prec *= 2) {
        std::vector<std::vector<Ball>> m;
        for (const auto& u : units) {
            auto lg = log_embedding_ball(o, u, prec);
            if (!lg) break;
            m.push_back(std::move(*lg));
        }
        if (m.size() != units.size()) continue;
        if (cols.empty()) {
            std::size_t drop = 0;
            double best = -1;
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0;
                for (const auto& r : m) s += std::fabs(r[k].mid_double());
                if (s > best) {
                    best = s;
                    drop = k;
                }
            }
            for (std::size_t k = 0; k < n; ++k)
                if (k != drop) cols.push_back(k);
        }
        Ball d = abs(ball_det(m, rows, cols));
        if (d.is_positive()) {
            if (d.radius_double() <= 1e-9 * d.lower_double()) return d;
            continue;
        }
        if (!multiplicatively_independent(o, units)) throw std::domain_error("regulator: units are dependent");
    }
    throw IndeterminateError("regulator: precision cap reached");
}

bool multiplicatively_independent(const MaximalOrder& o, const std::vector<Elt>& elems)
{
    return independent_impl({{&o, &elems}});
}

bool multiplicatively_independent(const MaximalOrder& k1, const std::vector<Elt>& e1, const MaximalOrder& k2,
                                  const std::vector<Elt>& e2)
{
    return independent_impl({{&k1, &e1}, {&k2, &e2}});
}

std::vector<Elt> saturate(const MaximalOrder& o, std::vector<Elt> basis, unsigned bound, std::uint64_t max_nodes)
{
    const int n = o.degree();
    const int r = static_cast<int>(basis.size());
    const Ideal whole = unit_ideal(o);
    for (unsigned l = 2; l <= bound; ++l) {
        if (!zmod::is_prime(l)) continue;
        bool again = true;
        while (again) {
            again = false;
            long total = 1;
            for (int i = 0; i < r; ++i) total *= l;
            for (long code = 1; code < total && !again; ++code) {
                std::vector<long> e(r);
                long c = code;
                for (int i = 0; i < r; ++i) {
                    e[i] = c % l;
                    c /= l;
                }
                auto first = std::find_if(e.begin(), e.end(), [](long v) { return v != 0; });
                if (*first != 1) continue;
                // a root xi has log vector log(eta) / l, so it is short for that weight
                Elt eta = power_product(o, basis, e);
                auto lv = log_embedding(o, eta);
                for (auto& v : lv) v /= l;
                Elt neg_eta = o.neg(eta);
                for (const auto& xi : weighted_short_elements(o, whole, lv, n * (1 + 1e-6L), max_nodes)) {
                    Elt p = o.pow(xi, l);
                    if (p == eta || p == neg_eta) {
                        basis[first - e.begin()] = xi;
                        again = true;
                        break;
                    }
                }
            }
        }
    }
    return basis;
}

UnitSystem find_units(const MaximalOrder& o, const UnitSearchConfig& cfg)
{
    const int n = o.degree();
    if (o.real_embeddings() != n) throw std::invalid_argument("find_units: field must be totally real");
    UnitSystem out;
    if (n == 1) {
        out.regulator = Ball(1, 128);
        out.saturated = true;
        return out;
    }
    const int r = n - 1;
    const long double s = cfg.grid_step;
    // a unit within half a step of the grid point in the first r coordinates
    const long double bound = (n - 1) * std::exp(s) + std::exp((n - 1) * s);
    const Ideal whole = unit_ideal(o);

    struct Found {
        long double sup;
        Elt u;
        std::vector<long double> lv;
    };
    std::vector<Found> found;
    std::set<Elt> seen;
    std::set<std::vector<long>> visited;
    std::vector<Elt> basis;
    long double rho = 2;
    while (true) {
        const long kmax = static_cast<long>(std::ceil(rho / s + 0.5L));
        std::vector<long> k(r, -kmax);
        while (true) {
            if (visited.insert(k).second) {
                std::vector<long double> v(n, 0);
                for (int i = 0; i < r; ++i) {
                    v[i] = k[i] * s;
                    v[n - 1] -= v[i];
                }
                for (auto& x : weighted_short_elements(o, whole, v, bound, cfg.max_nodes)) {
                    if (abs(o.norm(x)) != 1 || !seen.insert(x).second) continue;
                    auto lv = log_embedding(o, x);
                    long double sup = 0;
                    for (int i = 0; i < r; ++i) sup = std::max(sup, std::fabs(lv[i]));
                    if (sup < 1e-9L) continue;  // +-1
                    found.push_back({sup, x, lv});
                }
            }
            int i = 0;
            while (i < r && k[i] == kmax) k[i++] = -kmax;
            if (i == r) break;
            ++k[i];
        }
        // every unit with sup <= rho has been seen; take successive minima
        std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
            if (a.sup != b.sup) return a.sup < b.sup;
            return a.u < b.u;
        });
        basis.clear();
        std::vector<std::vector<long double>> rows;
        for (const auto& f : found) {
            if (f.sup > rho) break;
            rows.push_back(f.lv);
            if (relative_gram_det(rows) > kIndependenceTol) {
                basis.push_back(f.u);
                if (static_cast<int>(basis.size()) == r) break;
            } else {
                rows.pop_back();
            }
        }
        if (static_cast<int>(basis.size()) == r) break;
        if (rho >= cfg.max_radius) throw ResourceError("find_units: search radius cap reached before full rank");
        rho = std::min(rho * 2, cfg.max_radius);
    }

    basis = saturate(o, std::move(basis), cfg.saturation_bound, cfg.max_nodes);
    out.saturated = true;

    // every unit seen must have integral coordinates in the final basis
    std::vector<std::vector<long double>> bl;
    for (const auto& u : basis) bl.push_back(log_embedding(o, u));
    for (const auto& f : found) {
        std::vector<std::vector<long double>> a(r, std::vector<long double>(r + 1));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) a[j][i] = bl[i][j];
        for (int j = 0; j < r; ++j) a[j][r] = f.lv[j];
        for (int c = 0; c < r; ++c) {
            int p = c;
            for (int q = c; q < r; ++q)
                if (std::fabs(a[q][c]) > std::fabs(a[p][c])) p = q;
            std::swap(a[p], a[c]);
            for (int q = 0; q < r; ++q) {
                if (q == c) continue;
                long double m = a[q][c] / a[c][c];
                for (int j = c; j <= r; ++j) a[q][j] -= m * a[c][j];
            }
        }
        for (int i = 0; i < r; ++i) {
            long double x = a[i][r] / a[i][i];
            if (std::fabs(x - std::round(x)) > 1e-6L)
                throw ResourceError("find_units: unit index has a prime factor above the saturation bound");
        }
    }
    for (auto& u : basis) {
        for (const auto& c : u)
            if (c != 0) {
                if (c < 0) u = o.neg(u);
                break;
            }
    }
    out.units = basis;
    out.regulator = regulator(o, basis);
    return out;
}

}  // namespace eucl
