#ifndef KURANISHI_SCALAR_HPP
#define KURANISHI_SCALAR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "kuranishi/error.hpp"

namespace kuranishi {

/// Exact rational, always kept in canonical form (gcd-reduced, positive
/// denominator). GMP canonicalizes results of arithmetic on canonical
/// operands, so only raw construction needs care.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1)
{
    if (den == 0)
        fail("DivisionByZero", "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "p/q" or "-p/q" (base 10). Whitespace is not accepted.
Rational rational_from_string(std::string_view text);

std::string to_string(const Rational& r);

/// Element of the ground field: a Gaussian rational re + im*i. Plain
/// rationals are the im == 0 case. All operations are exact.
class Scalar {
  public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(Rational re) : re_(std::move(re)), im_(0) {}
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_rational() const { return im_ == 0; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o)
    {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    Scalar conjugate() const { return Scalar(re_, -im_); }

    Scalar inverse() const
    {
        Rational n = re_ * re_ + im_ * im_;
        if (n == 0)
            fail("DivisionByZero", "inverse of zero");
        return Scalar(re_ / n, -im_ / n);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator/=(const Scalar& o) { return *this = *this * o.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Total order (lexicographic on (re, im)); used for deterministic
    /// container layouts, not for any analytic meaning.
    friend bool operator<(const Scalar& a, const Scalar& b)
    {
        int c = cmp(a.re_, b.re_);
        if (c != 0)
            return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    std::string str() const;

  private:
    Rational re_, im_;
};

inline Scalar operator*(const Rational& r, const Scalar& s) { return Scalar(r) * s; }

} // namespace kuranishi

#endif
