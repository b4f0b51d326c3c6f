#pragma once

// Midpoint-radius real balls over MPFR. Every operation returns a ball that
// contains the exact result of applying the operation to any points of the
// input balls; radii are accumulated with upward rounding.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace eucl {

class Ball {
public:
    explicit Ball(mpfr_prec_t prec = 128);
    Ball(long v, mpfr_prec_t prec);
    Ball(const mpz_class& v, mpfr_prec_t prec);
    Ball(const mpq_class& v, mpfr_prec_t prec);
    // Exact value of a long double.
    static Ball from_long_double(long double v, mpfr_prec_t prec);
    // Dyadic interval [num / 2^k, (num + 1) / 2^k].
    static Ball from_dyadic_interval(const mpz_class& num, long k, mpfr_prec_t prec);

    Ball(const Ball& other);
    Ball(Ball&& other) noexcept;
    Ball& operator=(const Ball& other);
    Ball& operator=(Ball&& other) noexcept;
    ~Ball();

    mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }

    Ball& operator+=(const Ball& o);
    Ball& operator-=(const Ball& o);
    Ball& operator*=(const Ball& o);
    Ball& operator/=(const Ball& o);

    friend Ball operator+(Ball a, const Ball& b) { return a += b; }
    friend Ball operator-(Ball a, const Ball& b) { return a -= b; }
    friend Ball operator*(Ball a, const Ball& b) { return a *= b; }
    friend Ball operator/(Ball a, const Ball& b) { return a /= b; }
    Ball operator-() const;

    static Ball pi(mpfr_prec_t prec);
    // cos(2 pi a / m) and sin(2 pi a / m) for integers a, m.
    static Ball cos_2pi(long a, long m, mpfr_prec_t prec);
    static Ball sin_2pi(long a, long m, mpfr_prec_t prec);

    friend Ball log(const Ball& x);
    friend Ball exp(const Ball& x);
    friend Ball sqrt(const Ball& x);
    friend Ball abs(const Ball& x);

    bool contains_zero() const;
    bool is_positive() const;
    bool is_negative() const;
    // Strict comparisons that hold for every point of both balls.
    bool certainly_less(const Ball& o) const;
    bool overlaps(const Ball& o) const;

    // The unique integer inside the ball, when exactly one exists.
    std::optional<mpz_class> unique_integer() const;

    double mid_double() const;
    long double mid_long_double() const;
    double radius_double() const;  // rounded up
    double upper_double() const;   // rounded up
    double lower_double() const;   // rounded down
    std::string to_string(int digits = 20) const;

    // round(mid * 2^shift); binary exponent of mid (0 for zero).
    mpz_class scaled_mid(long shift) const;
    long exponent() const;

    const mpfr_t& mid() const { return mid_; }
    const mpfr_t& rad() const { return rad_; }

private:
    void add_rounding_error();
    mpfr_t mid_;
    mpfr_t rad_;
};

}  // namespace eucl
