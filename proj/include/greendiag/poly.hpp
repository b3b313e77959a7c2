#pragma once

#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "greendiag/rational.hpp"

namespace greendiag {

// Dense univariate polynomial over a coefficient ring C.  C must be an
// integral domain with: default construction == 0, construction from
// Rational, +, -, *, unary -, and ==.  Trailing zero coefficients are always
// trimmed, so the zero polynomial has an empty coefficient vector and
// degree() == std::nullopt (a distinguished sentinel, never -1 arithmetic).
template <class C>
class UniPolyT {
  public:
    UniPolyT() = default;
    UniPolyT(std::initializer_list<C> cs) : c_(cs) { trim(); }
    explicit UniPolyT(std::vector<C> cs) : c_(std::move(cs)) { trim(); }

    static UniPolyT constant(C v) { return UniPolyT(std::vector<C>{std::move(v)}); }

    bool is_zero() const { return c_.empty(); }
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }
    // degree() for nonzero polynomials, 0 for the zero polynomial; convenient
    // where "constant or zero" behave identically.
    int degree_or0() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }

    const C& coeff(int i) const {
        static const C zero{};
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(i)];
    }
    void set_coeff(int i, C v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1);
        c_[static_cast<std::size_t>(i)] = std::move(v);
        trim();
    }
    const C& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    const std::vector<C>& coeffs() const { return c_; }

    UniPolyT operator-() const {
        std::vector<C> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = -c_[i];
        return UniPolyT(std::move(out));
    }
    friend UniPolyT operator+(const UniPolyT& a, const UniPolyT& b) {
        std::vector<C> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return UniPolyT(std::move(out));
    }
    friend UniPolyT operator-(const UniPolyT& a, const UniPolyT& b) { return a + (-b); }
    friend UniPolyT operator*(const UniPolyT& a, const UniPolyT& b) {
        if (a.is_zero() || b.is_zero()) return UniPolyT();
        std::vector<C> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        return UniPolyT(std::move(out));
    }
    UniPolyT scaled(const C& s) const {
        std::vector<C> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
        return UniPolyT(std::move(out));
    }
    friend bool operator==(const UniPolyT& a, const UniPolyT& b) { return a.c_ == b.c_; }

    UniPolyT derivative() const {
        if (c_.size() < 2) return UniPolyT();
        std::vector<C> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * C(Rational(static_cast<long>(i)));
        return UniPolyT(std::move(out));
    }

    C eval(const C& x) const {  // Horner
        C acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    template <class D, class Fn>
    UniPolyT<D> map(Fn&& f) const {
        std::vector<D> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = f(c_[i]);
        return UniPolyT<D>(std::move(out));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == C{}) c_.pop_back();
    }
    std::vector<C> c_;
};

using UniPoly = UniPolyT<Rational>;

// Dense bivariate polynomial in (p, z), stored as a vector of z-polynomials
// indexed by the power of p.  Trailing zero slices are trimmed; the zero
// polynomial has no slices and deg_p()/deg_z() == std::nullopt.
template <class C>
class BiPolyT {
  public:
    BiPolyT() = default;
    explicit BiPolyT(std::vector<UniPolyT<C>> slices) : s_(std::move(slices)) { trim(); }

    // Lift a z-polynomial (p-degree 0) or a p-polynomial (z-degree 0).
    static BiPolyT from_z_poly(const UniPolyT<C>& zp) { return BiPolyT(std::vector<UniPolyT<C>>{zp}); }
    static BiPolyT from_p_poly(const UniPolyT<C>& pp) {
        std::vector<UniPolyT<C>> s;
        for (int n = 0; n <= pp.degree_or0(); ++n) s.push_back(UniPolyT<C>::constant(pp.coeff(n)));
        return BiPolyT(std::move(s));
    }

    bool is_zero() const { return s_.empty(); }
    std::optional<int> deg_p() const {
        if (s_.empty()) return std::nullopt;
        return static_cast<int>(s_.size()) - 1;
    }
    std::optional<int> deg_z() const {
        if (s_.empty()) return std::nullopt;
        int d = 0;
        for (const auto& sl : s_) d = std::max(d, sl.degree_or0());
        return d;
    }

    const UniPolyT<C>& slice(int n) const {
        static const UniPolyT<C> zero{};
        if (n < 0 || n >= static_cast<int>(s_.size())) return zero;
        return s_[static_cast<std::size_t>(n)];
    }
    void set_slice(int n, UniPolyT<C> sl) {
        if (n >= static_cast<int>(s_.size())) s_.resize(static_cast<std::size_t>(n) + 1);
        s_[static_cast<std::size_t>(n)] = std::move(sl);
        trim();
    }
    const C& coeff(int n, int l) const { return slice(n).coeff(l); }

    BiPolyT operator-() const {
        std::vector<UniPolyT<C>> out(s_.size());
        for (std::size_t i = 0; i < s_.size(); ++i) out[i] = -s_[i];
        return BiPolyT(std::move(out));
    }
    friend BiPolyT operator+(const BiPolyT& a, const BiPolyT& b) {
        std::vector<UniPolyT<C>> out(std::max(a.s_.size(), b.s_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.slice(static_cast<int>(i)) + b.slice(static_cast<int>(i));
        return BiPolyT(std::move(out));
    }
    friend BiPolyT operator-(const BiPolyT& a, const BiPolyT& b) { return a + (-b); }
    friend BiPolyT operator*(const BiPolyT& a, const BiPolyT& b) {
        if (a.is_zero() || b.is_zero()) return BiPolyT();
        std::vector<UniPolyT<C>> out(a.s_.size() + b.s_.size() - 1);
        for (std::size_t i = 0; i < a.s_.size(); ++i)
            for (std::size_t j = 0; j < b.s_.size(); ++j) out[i + j] = out[i + j] + a.s_[i] * b.s_[j];
        return BiPolyT(std::move(out));
    }
    friend bool operator==(const BiPolyT& a, const BiPolyT& b) { return a.s_ == b.s_; }

    BiPolyT dp() const {  // d/dp
        if (s_.size() < 2) return BiPolyT();
        std::vector<UniPolyT<C>> out(s_.size() - 1);
        for (std::size_t n = 1; n < s_.size(); ++n) out[n - 1] = s_[n].scaled(C(Rational(static_cast<long>(n))));
        return BiPolyT(std::move(out));
    }
    BiPolyT dz() const {  // d/dz
        std::vector<UniPolyT<C>> out(s_.size());
        for (std::size_t n = 0; n < s_.size(); ++n) out[n] = s_[n].derivative();
        return BiPolyT(std::move(out));
    }

    C eval(const C& p, const C& z) const {  // Horner in p of slice values
        C acc{};
        for (std::size_t n = s_.size(); n-- > 0;) acc = acc * p + s_[n].eval(z);
        return acc;
    }

  private:
    void trim() {
        while (!s_.empty() && s_.back().is_zero()) s_.pop_back();
    }
    std::vector<UniPolyT<C>> s_;
};

using BiPoly = BiPolyT<Rational>;

// Debug/reporting helpers (exact, not for serialization).
std::string to_string(const UniPoly& f, const std::string& var);
std::string to_string(const BiPoly& f);

// Numeric evaluation of an exact polynomial at a double point (Horner on
// double-converted coefficients).
double eval_double(const UniPoly& f, double x);
double eval_double(const BiPoly& f, double p, double z);

}  // namespace greendiag
