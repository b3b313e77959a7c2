#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

#include "greendiag/errors.hpp"

namespace greendiag {

// Arbitrary-precision rational with a canonical representation at all times:
// gcd(numerator, denominator) == 1 and denominator > 0.  Zero is 0/1.
//
// Serialization is the string "n" when the denominator is 1 and "n/d"
// otherwise, e.g. "-3/4", "15", "0".  parse() accepts the same grammar
// (non-canonical input such as "2/4" is reduced on construction).
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long n, long d);
    explicit Rational(const mpq_class& q);

    static Rational parse(const std::string& s);
    std::string str() const;

    double to_double() const { return v_.get_d(); }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    Rational abs() const;

    bool is_integer() const;
    // The value as a machine integer; throws DomainError unless the value is
    // an integer that fits in long.
    long to_long() const;

    // Exact square root when the value is a perfect square of a rational,
    // std::nullopt otherwise.  Negative values map to nullopt.
    static std::optional<Rational> sqrt_exact(const Rational& r);

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);  // throws DomainError on /0

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    mpq_class v_;  // kept canonical by every constructor and operator
};

}  // namespace greendiag
