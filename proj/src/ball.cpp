#include "eucl/ball.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace eucl {

namespace {

constexpr mpfr_prec_t kRadPrec = 64;

// RAII scratch value.
struct Tmp {
    mpfr_t v;
    explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Tmp() { mpfr_clear(v); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
};

}  // namespace

Ball::Ball(mpfr_prec_t prec)
{
    mpfr_init2(mid_, prec);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

Ball::Ball(long v, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_si(mid_, v, MPFR_RNDN) != 0) add_rounding_error();
}

Ball::Ball(const mpz_class& v, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_z(mid_, v.get_mpz_t(), MPFR_RNDN) != 0) add_rounding_error();
}

Ball::Ball(const mpq_class& v, mpfr_prec_t prec) : Ball(prec)
{
    if (mpfr_set_q(mid_, v.get_mpq_t(), MPFR_RNDN) != 0) add_rounding_error();
}

Ball Ball::from_long_double(long double v, mpfr_prec_t prec)
{
    Ball b(std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_ld(b.mid_, v, MPFR_RNDN);
    return b;
}

Ball Ball::from_dyadic_interval(const mpz_class& num, long k, mpfr_prec_t prec)
{
    // midpoint (2 num + 1) / 2^(k+1), radius 2^-(k+1)
    Ball b(prec);
    mpz_class twice = 2 * num + 1;
    if (mpfr_set_z_2exp(b.mid_, twice.get_mpz_t(), -(k + 1), MPFR_RNDN) != 0) b.add_rounding_error();
    Tmp r(kRadPrec);
    mpfr_set_ui_2exp(r.v, 1, -(k + 1), MPFR_RNDU);
    mpfr_add(b.rad_, b.rad_, r.v, MPFR_RNDU);
    return b;
}

Ball::Ball(const Ball& other)
{
    mpfr_init2(mid_, mpfr_get_prec(other.mid_));
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept : Ball(other) {}

Ball& Ball::operator=(const Ball& other)
{
    if (this != &other) {
        mpfr_set_prec(mid_, mpfr_get_prec(other.mid_));
        mpfr_set(mid_, other.mid_, MPFR_RNDN);
        mpfr_set(rad_, other.rad_, MPFR_RNDU);
    }
    return *this;
}

Ball& Ball::operator=(Ball&& other) noexcept
{
    if (this != &other) {
        mpfr_swap(mid_, other.mid_);
        mpfr_swap(rad_, other.rad_);
    }
    return *this;
}

Ball::~Ball()
{
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

void Ball::add_rounding_error()
{
    if (mpfr_zero_p(mid_)) return;
    Tmp e(kRadPrec);
    mpfr_abs(e.v, mid_, MPFR_RNDU);
    mpfr_mul_2si(e.v, e.v, 1 - static_cast<long>(precision()), MPFR_RNDU);
    mpfr_add(rad_, rad_, e.v, MPFR_RNDU);
}

Ball& Ball::operator+=(const Ball& o)
{
    if (o.precision() > precision()) mpfr_prec_round(mid_, o.precision(), MPFR_RNDN);
    if (mpfr_add(mid_, mid_, o.mid_, MPFR_RNDN) != 0) add_rounding_error();
    mpfr_add(rad_, rad_, o.rad_, MPFR_RNDU);
    return *this;
}

Ball& Ball::operator-=(const Ball& o)
{
    if (o.precision() > precision()) mpfr_prec_round(mid_, o.precision(), MPFR_RNDN);
    if (mpfr_sub(mid_, mid_, o.mid_, MPFR_RNDN) != 0) add_rounding_error();
    mpfr_add(rad_, rad_, o.rad_, MPFR_RNDU);
    return *this;
}

Ball& Ball::operator*=(const Ball& o)
{
    if (o.precision() > precision()) mpfr_prec_round(mid_, o.precision(), MPFR_RNDN);
    Tmp t(kRadPrec), u(kRadPrec);
    // |a| rb + |b| ra + ra rb
    mpfr_abs(t.v, mid_, MPFR_RNDU);
    mpfr_mul(t.v, t.v, o.rad_, MPFR_RNDU);
    mpfr_abs(u.v, o.mid_, MPFR_RNDU);
    mpfr_mul(u.v, u.v, rad_, MPFR_RNDU);
    mpfr_add(t.v, t.v, u.v, MPFR_RNDU);
    mpfr_mul(u.v, rad_, o.rad_, MPFR_RNDU);
    mpfr_add(rad_, t.v, u.v, MPFR_RNDU);
    if (mpfr_mul(mid_, mid_, o.mid_, MPFR_RNDN) != 0) add_rounding_error();
    return *this;
}

Ball& Ball::operator/=(const Ball& o)
{
    if (o.contains_zero()) throw std::domain_error("Ball: division by a ball containing zero");
    if (o.precision() > precision()) mpfr_prec_round(mid_, o.precision(), MPFR_RNDN);
    Tmp lowb(kRadPrec), q(kRadPrec), t(kRadPrec);
    mpfr_abs(lowb.v, o.mid_, MPFR_RNDD);
    mpfr_sub(lowb.v, lowb.v, o.rad_, MPFR_RNDD);
    mpfr_div(q.v, mid_, o.mid_, MPFR_RNDA);
    mpfr_abs(q.v, q.v, MPFR_RNDU);
    mpfr_mul(t.v, q.v, o.rad_, MPFR_RNDU);
    mpfr_add(t.v, t.v, rad_, MPFR_RNDU);
    mpfr_div(rad_, t.v, lowb.v, MPFR_RNDU);
    if (mpfr_div(mid_, mid_, o.mid_, MPFR_RNDN) != 0) add_rounding_error();
    return *this;
}

Ball Ball::operator-() const
{
    Ball r(*this);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

Ball Ball::pi(mpfr_prec_t prec)
{
    Ball b(prec);
    mpfr_const_pi(b.mid_, MPFR_RNDN);
    b.add_rounding_error();
    return b;
}

namespace {

// Angle 2 pi a / m at the precision w of out; absolute error below 2^(5 - w).
void angle(mpfr_t out, long a, long m)
{
    long r = ((a % m) + m) % m;
    mpfr_const_pi(out, MPFR_RNDN);
    mpfr_mul_si(out, out, 2 * r, MPFR_RNDN);
    mpfr_div_si(out, out, m, MPFR_RNDN);
}

}  // namespace

Ball Ball::cos_2pi(long a, long m, mpfr_prec_t prec)
{
    mpfr_prec_t w = prec + 64;
    Tmp t(w);
    angle(t.v, a, m);
    Ball b(prec);
    mpfr_cos(b.mid_, t.v, MPFR_RNDN);
    mpfr_set_ui_2exp(b.rad_, 1, 5 - static_cast<long>(w), MPFR_RNDU);
    b.add_rounding_error();
    return b;
}

Ball Ball::sin_2pi(long a, long m, mpfr_prec_t prec)
{
    mpfr_prec_t w = prec + 64;
    Tmp t(w);
    angle(t.v, a, m);
    Ball b(prec);
    mpfr_sin(b.mid_, t.v, MPFR_RNDN);
    mpfr_set_ui_2exp(b.rad_, 1, 5 - static_cast<long>(w), MPFR_RNDU);
    b.add_rounding_error();
    return b;
}

Ball log(const Ball& x)
{
    if (!x.is_positive()) throw std::domain_error("Ball: log of a ball not certainly positive");
    Ball r(x.precision());
    Tmp low(kRadPrec);
    mpfr_sub(low.v, x.mid_, x.rad_, MPFR_RNDD);
    mpfr_div(r.rad_, x.rad_, low.v, MPFR_RNDU);
    mpfr_log(r.mid_, x.mid_, MPFR_RNDN);
    r.add_rounding_error();
    return r;
}

Ball exp(const Ball& x)
{
    Ball r(x.precision());
    Tmp e(kRadPrec), m(kRadPrec);
    mpfr_expm1(e.v, x.rad_, MPFR_RNDU);
    mpfr_exp(m.v, x.mid_, MPFR_RNDU);
    mpfr_mul(r.rad_, e.v, m.v, MPFR_RNDU);
    mpfr_exp(r.mid_, x.mid_, MPFR_RNDN);
    r.add_rounding_error();
    return r;
}

Ball sqrt(const Ball& x)
{
    if (!x.is_positive()) throw std::domain_error("Ball: sqrt of a ball not certainly positive");
    Ball r(x.precision());
    Tmp low(kRadPrec);
    mpfr_sub(low.v, x.mid_, x.rad_, MPFR_RNDD);
    mpfr_sqrt(low.v, low.v, MPFR_RNDD);
    mpfr_div(r.rad_, x.rad_, low.v, MPFR_RNDU);
    mpfr_sqrt(r.mid_, x.mid_, MPFR_RNDN);
    r.add_rounding_error();
    return r;
}

Ball abs(const Ball& x)
{
    Ball r(x);
    mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

bool Ball::contains_zero() const
{
    Tmp a(kRadPrec);
    mpfr_abs(a.v, mid_, MPFR_RNDD);
    return mpfr_lessequal_p(a.v, rad_) != 0;
}

bool Ball::is_positive() const
{
    return mpfr_sgn(mid_) > 0 && !contains_zero();
}

bool Ball::is_negative() const
{
    return mpfr_sgn(mid_) < 0 && !contains_zero();
}

bool Ball::certainly_less(const Ball& o) const
{
    return (o - *this).is_positive();
}

bool Ball::overlaps(const Ball& o) const
{
    return (o - *this).contains_zero();
}

std::optional<mpz_class> Ball::unique_integer() const
{
    mpfr_prec_t p = precision() + 8;
    Tmp lo(p), hi(p);
    mpfr_sub(lo.v, mid_, rad_, MPFR_RNDD);
    mpfr_add(hi.v, mid_, rad_, MPFR_RNDU);
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), lo.v, MPFR_RNDU);  // ceil(lower)
    mpfr_get_z(b.get_mpz_t(), hi.v, MPFR_RNDD);  // floor(upper)
    if (a == b) return a;
    return std::nullopt;
}

mpz_class Ball::scaled_mid(long shift) const
{
    Tmp t(precision());
    mpfr_mul_2si(t.v, mid_, shift, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t.v, MPFR_RNDN);
    return z;
}

long Ball::exponent() const
{
    if (mpfr_zero_p(mid_)) return 0;
    return mpfr_get_exp(mid_);
}

double Ball::mid_double() const
{
    return mpfr_get_d(mid_, MPFR_RNDN);
}

long double Ball::mid_long_double() const
{
    return mpfr_get_ld(mid_, MPFR_RNDN);
}

double Ball::radius_double() const
{
    return mpfr_get_d(rad_, MPFR_RNDU);
}

double Ball::upper_double() const
{
    Tmp t(precision());
    mpfr_add(t.v, mid_, rad_, MPFR_RNDU);
    return mpfr_get_d(t.v, MPFR_RNDU);
}

double Ball::lower_double() const
{
    Tmp t(precision());
    mpfr_sub(t.v, mid_, rad_, MPFR_RNDD);
    return mpfr_get_d(t.v, MPFR_RNDD);
}

std::string Ball::to_string(int digits) const
{
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg +/- %.3Rg", digits, mid_, rad_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

}  // namespace eucl
