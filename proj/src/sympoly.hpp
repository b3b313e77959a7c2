#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "greendiag/errors.hpp"
#include "greendiag/rational.hpp"

namespace greendiag {

// Sparse multivariate polynomial over Rational in at most kMaxVars variables,
// with a deterministic term order.  The solver uses it to carry coefficients
// that are still unknown while a degree slice is being assembled, so it only
// needs exact ring operations, substitution, and a little structure analysis
// (affine part, single-variable view) -- not a general CAS.
class SymPoly {
  public:
    static constexpr int kMaxVars = 16;
    using Key = std::array<std::uint8_t, kMaxVars>;

    SymPoly() = default;
    SymPoly(const Rational& c) {
        if (!c.is_zero()) terms_[Key{}] = c;
    }
    SymPoly(long c) : SymPoly(Rational(c)) {}

    static SymPoly var(int index) {
        if (index < 0 || index >= kMaxVars)
            throw DomainError("symbolic variable index out of range");
        SymPoly p;
        Key k{};
        k[static_cast<std::size_t>(index)] = 1;
        p.terms_.emplace(k, Rational(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{});
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant())
            throw DomainError("symbolic polynomial is not a constant");
        return terms_.begin()->second;
    }

    // Sorted indices of the variables that actually occur.
    std::vector<int> vars() const {
        std::array<bool, kMaxVars> seen{};
        for (const auto& [key, coeff] : terms_) {
            (void)coeff;
            for (int i = 0; i < kMaxVars; ++i)
                if (key[static_cast<std::size_t>(i)] != 0) seen[static_cast<std::size_t>(i)] = true;
        }
        std::vector<int> out;
        for (int i = 0; i < kMaxVars; ++i)
            if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
        return out;
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& [key, coeff] : terms_) {
            (void)coeff;
            int d = 0;
            for (auto e : key) d += e;
            deg = std::max(deg, d);
        }
        return deg;
    }

    SymPoly operator-() const {
        SymPoly out;
        for (const auto& [key, coeff] : terms_) out.terms_.emplace(key, -coeff);
        return out;
    }

    SymPoly& operator+=(const SymPoly& o) {
        for (const auto& [key, coeff] : o.terms_) add_term(key, coeff);
        return *this;
    }
    SymPoly& operator-=(const SymPoly& o) {
        for (const auto& [key, coeff] : o.terms_) add_term(key, -coeff);
        return *this;
    }

    friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }

    friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
        SymPoly out;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                Key k{};
                for (int i = 0; i < kMaxVars; ++i) {
                    const int e = ka[static_cast<std::size_t>(i)] + kb[static_cast<std::size_t>(i)];
                    if (e > 255) throw DomainError("symbolic exponent overflow");
                    k[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
                }
                out.add_term(k, ca * cb);
            }
        }
        return out;
    }

    friend bool operator==(const SymPoly& a, const SymPoly& b) {
        return a.terms_ == b.terms_;
    }

    // Replaces one variable by an exact value.
    SymPoly substituted(int var, const Rational& value) const {
        if (var < 0 || var >= kMaxVars)
            throw DomainError("symbolic variable index out of range");
        SymPoly out;
        for (const auto& [key, coeff] : terms_) {
            Rational c = coeff;
            for (int e = 0; e < key[static_cast<std::size_t>(var)]; ++e) c = c * value;
            Key k = key;
            k[static_cast<std::size_t>(var)] = 0;
            out.add_term(k, c);
        }
        return out;
    }

    bool is_affine() const { return total_degree() <= 1; }

    Rational affine_constant() const {
        auto it = terms_.find(Key{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational affine_coeff(int var) const {
        Key k{};
        k[static_cast<std::size_t>(var)] = 1;
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Dense coefficients of this polynomial viewed in a single variable.
    // Throws when any other variable occurs.
    std::vector<Rational> single_var_coeffs(int var) const {
        int top = 0;
        for (const auto& [key, coeff] : terms_) {
            (void)coeff;
            for (int i = 0; i < kMaxVars; ++i)
                if (i != var && key[static_cast<std::size_t>(i)] != 0)
                    throw DomainError("polynomial involves more than the requested variable");
            top = std::max(top, static_cast<int>(key[static_cast<std::size_t>(var)]));
        }
        std::vector<Rational> out(static_cast<std::size_t>(top) + 1, Rational(0));
        for (const auto& [key, coeff] : terms_)
            out[key[static_cast<std::size_t>(var)]] = coeff;
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [key, coeff] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << coeff.str();
            for (int i = 0; i < kMaxVars; ++i) {
                const int e = key[static_cast<std::size_t>(i)];
                if (e == 0) continue;
                os << "*e" << i;
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

  private:
    void add_term(const Key& key, const Rational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(key, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<Key, Rational> terms_;
};

}  // namespace greendiag
