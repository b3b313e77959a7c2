#include "greendiag/poly.hpp"

namespace greendiag {

std::string to_string(const UniPoly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= f.degree_or0(); ++i) {
        const Rational& c = f.coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        os << c.str();
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::string to_string(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int n = 0; n <= f.deg_p().value(); ++n) {
        if (f.slice(n).is_zero()) continue;
        if (!first) os << " + ";
        os << "p^" << n << "*(" << to_string(f.slice(n), "z") << ")";
        first = false;
    }
    return os.str();
}

double eval_double(const UniPoly& f, double x) {
    double acc = 0.0;
    for (int i = f.degree_or0(); i >= 0; --i) acc = acc * x + f.coeff(i).to_double();
    return acc;
}

double eval_double(const BiPoly& f, double p, double z) {
    double acc = 0.0;
    for (int n = f.deg_p().value_or(0); n >= 0; --n) acc = acc * p + eval_double(f.slice(n), z);
    return acc;
}

}  // namespace greendiag
