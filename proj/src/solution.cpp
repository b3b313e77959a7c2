#include "greendiag/solution.hpp"

#include <json.hpp>

#include <sstream>

#include "greendiag/errors.hpp"

namespace greendiag {

namespace {

std::vector<std::string> coeff_strings(const UniPoly& f) {
    std::vector<std::string> out;
    for (const auto& c : f.coeffs()) out.push_back(c.str());
    return out;
}

std::string rational_latex(const Rational& r) {
    if (r.is_integer()) return r.str();
    const Rational a = r.abs();
    std::string s = r.sign() < 0 ? "-" : "";
    return s + "\\frac{" + a.num_str() + "}{" + a.den_str() + "}";
}

std::string power_latex(const std::string& var, int pow) {
    if (pow == 0) return "";
    if (pow == 1) return var;
    return var + "^{" + std::to_string(pow) + "}";
}

// One monomial |c| var^pow without its sign.
std::string monomial_latex(const Rational& c, const std::string& var, int pow) {
    const Rational a = c.abs();
    if (pow == 0) return rational_latex(a);
    const std::string p = power_latex(var, pow);
    if (a == Rational(1)) return p;
    return rational_latex(a) + " " + p;
}

// Joins pre-signed parts: each part carries its sign in front.
std::string join_signed(const std::vector<std::pair<int, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& [sign, body] = parts[i];
        if (i == 0)
            out += (sign < 0 ? "-" : "") + body;
        else
            out += (sign < 0 ? " - " : " + ") + body;
    }
    return out;
}

std::string poly_latex(const UniPoly& f, const std::string& var, bool descending) {
    std::vector<std::pair<int, std::string>> parts;
    const int d = f.degree_or0();
    for (int i = 0; i <= d; ++i) {
        const int pow = descending ? d - i : i;
        const Rational& c = f.coeff(pow);
        if (c.is_zero()) continue;
        parts.emplace_back(c.sign(), monomial_latex(c, var, pow));
    }
    return join_signed(parts);
}

int nonzero_terms(const UniPoly& f) {
    int n = 0;
    for (const auto& c : f.coeffs())
        if (!c.is_zero()) ++n;
    return n;
}

std::string bipoly_latex(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<int, std::string>> parts;
    for (int n = *f.deg_p(); n >= 0; --n) {
        const UniPoly& sl = f.slice(n);
        if (sl.is_zero()) continue;
        const std::string pn = power_latex("p", n);
        if (n == 0) {
            // constant p-slice: emit its terms directly
            const std::string body = poly_latex(sl, "z", false);
            const int sign = body.rfind('-', 0) == 0 ? -1 : +1;
            parts.emplace_back(sign, sign < 0 ? body.substr(1) : body);
        } else if (sl == UniPoly({Rational(1)})) {
            parts.emplace_back(+1, pn);
        } else if (nonzero_terms(sl) == 1) {
            const int l = *sl.degree();
            parts.emplace_back(sl.coeff(l).sign(),
                               monomial_latex(sl.coeff(l), "z", l) + " " + pn);
        } else {
            parts.emplace_back(
                +1, "\\left(" + poly_latex(sl, "z", false) + "\\right) " + pn);
        }
    }
    return join_signed(parts);
}

}  // namespace

std::string emit_solution(const SolutionForm& sol) {
    nlohmann::ordered_json j;
    j["N"] = sol.N;
    j["M"] = sol.M;
    auto slices = nlohmann::ordered_json::array();
    const int dp = sol.P.is_zero() ? -1 : *sol.P.deg_p();
    for (int n = 0; n <= dp; ++n) slices.push_back(coeff_strings(sol.P.slice(n)));
    j["P"] = std::move(slices);
    j["Q"] = coeff_strings(sol.Q);
    j["sigma"] = sol.sigma;
    j["spec_hash"] = sol.spec_hash;
    return j.dump();
}

SolutionForm parse_solution(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedInput("solution document must be a JSON object");
    for (const char* key : {"N", "M", "P", "Q", "sigma", "spec_hash"})
        if (!j.contains(key))
            throw MalformedInput(std::string("solution document is missing ") + key);
    if (!j["N"].is_number_integer() || !j["sigma"].is_number_integer())
        throw MalformedInput("N and sigma must be integers");
    if (!j["M"].is_array() || !j["P"].is_array() || !j["Q"].is_array())
        throw MalformedInput("M, P, Q must be arrays");
    if (!j["spec_hash"].is_string()) throw MalformedInput("spec_hash must be a string");

    SolutionForm sol;
    sol.N = j["N"].get<long>();
    sol.sigma = j["sigma"].get<int>();
    sol.spec_hash = j["spec_hash"].get<std::string>();
    for (const auto& m : j["M"]) {
        if (!m.is_number_integer()) throw MalformedInput("M entries must be integers");
        sol.M.push_back(m.get<int>());
    }
    auto read_poly = [](const nlohmann::json& arr, const char* what) {
        std::vector<Rational> cs;
        for (const auto& item : arr) {
            if (!item.is_string())
                throw MalformedInput(std::string(what) +
                                     " coefficients must be rational strings");
            cs.push_back(Rational::parse(item.get<std::string>()));
        }
        return UniPoly(std::move(cs));
    };
    int n = 0;
    for (const auto& sl : j["P"]) {
        if (!sl.is_array()) throw MalformedInput("P slices must be arrays");
        sol.P.set_slice(n++, read_poly(sl, "P"));
    }
    sol.Q = read_poly(j["Q"], "Q");
    return sol;
}

std::string latex_solution(const SolutionForm& sol) {
    std::ostringstream os;
    os << "P(p,z) = " << bipoly_latex(sol.P) << "\n";
    os << "Q(p) = " << poly_latex(sol.Q, "p", true) << "\n";
    os << "G(p,x) = " << (sol.sigma < 0 ? "-" : "")
       << "\\frac{P(p,z(x))}{2\\sqrt{Q(p)}}\n";
    return os.str();
}

}  // namespace greendiag
