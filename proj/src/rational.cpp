#include "greendiag/rational.hpp"

#include <cctype>
#include <ostream>

namespace greendiag {

Rational::Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
    if (sgn(v_.get_den()) == 0) throw DomainError("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    // Grammar: '-'? digits ('/' digits)?  -- anything else is rejected.
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    const std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) throw MalformedInput("bad rational literal: '" + s + "'");
    std::size_t den_begin = std::string::npos;
    if (i < s.size()) {
        if (s[i] != '/') throw MalformedInput("bad rational literal: '" + s + "'");
        den_begin = ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin) throw MalformedInput("bad rational literal: '" + s + "'");
    }
    if (i != s.size()) throw MalformedInput("bad rational literal: '" + s + "'");

    mpz_class num(s.substr(0, den_begin == std::string::npos ? s.size() : den_begin - 1));
    mpz_class den(den_begin == std::string::npos ? std::string("1") : s.substr(den_begin));
    if (sgn(den) == 0) throw MalformedInput("bad rational literal (zero denominator): '" + s + "'");
    Rational r;
    r.v_ = mpq_class(num) / mpq_class(den);
    r.v_.canonicalize();
    return r;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const {
    Rational r(*this);
    r.v_ = ::abs(r.v_);
    return r;
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

long Rational::to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p())
        throw DomainError("rational " + str() + " is not a small integer");
    return v_.get_num().get_si();
}

std::optional<Rational> Rational::sqrt_exact(const Rational& r) {
    if (r.sign() < 0) return std::nullopt;
    const mpz_class& num = r.v_.get_num();
    const mpz_class& den = r.v_.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
    Rational out;
    out.v_ = mpq_class(sn) / mpq_class(sd);
    out.v_.canonicalize();
    return out;
}

Rational Rational::operator-() const {
    Rational r(*this);
    r.v_ = -r.v_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace greendiag
