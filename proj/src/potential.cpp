#include "greendiag/potential.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "greendiag/elliptic.hpp"
#include "greendiag/errors.hpp"

namespace greendiag {

namespace {

const Rational& require_param(const std::map<std::string, Rational>& params,
                              const std::string& key, const char* map_name) {
    auto it = params.find(key);
    if (it == params.end())
        throw InadmissibleInput(std::string("map ") + map_name + " requires parameter " + key);
    return it->second;
}

// w(z) = (dz/dx)^2 for z = cn^2(m x; k):
//   (z')^2 = 4 m^2 z (1 - z) (1 - k^2 + k^2 z).
UniPoly cn2_profile(const Rational& m, const Rational& k2) {
    const Rational m2 = m * m;
    const Rational four_m2 = Rational(4) * m2;
    return UniPoly({Rational(0), four_m2 * (Rational(1) - k2),
                    four_m2 * (Rational(2) * k2 - Rational(1)), -four_m2 * k2});
}

std::vector<std::string> coeff_strings(const UniPoly& f) {
    std::vector<std::string> out;
    for (const auto& c : f.coeffs()) out.push_back(c.str());
    return out;
}

UniPoly poly_from_strings(const std::vector<std::string>& parts) {
    std::vector<Rational> cs;
    cs.reserve(parts.size());
    for (const auto& s : parts) cs.push_back(Rational::parse(s));
    return UniPoly(cs);
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string map_id_name(MapId id) {
    switch (id) {
        case MapId::none: return "none";
        case MapId::identity: return "identity";
        case MapId::cn2: return "cn2";
    }
    throw DomainError("unknown map id");
}

MapId map_id_from_name(const std::string& name) {
    if (name == "none") return MapId::none;
    if (name == "identity") return MapId::identity;
    if (name == "cn2") return MapId::cn2;
    throw MalformedInput("unknown map name: " + name);
}

PotentialSpec PotentialSpec::make(MapId map_id, std::map<std::string, Rational> params,
                                  UniPoly w, UniPoly u) {
    if (!w.degree().has_value()) throw InadmissibleInput("w(z) must be nonzero");

    PotentialSpec spec;
    spec.map_id = map_id;
    spec.params = std::move(params);
    spec.w = std::move(w);
    spec.u = std::move(u);

    switch (map_id) {
        case MapId::none:
            break;
        case MapId::identity:
            if (!(spec.w == UniPoly({Rational(1)})))
                throw InadmissibleInput("identity map requires w(z) = 1");
            break;
        case MapId::cn2: {
            const Rational& m = require_param(spec.params, "m", "cn2");
            const Rational& k2 = require_param(spec.params, "k2", "cn2");
            if (m.is_zero()) throw InadmissibleInput("cn2 map requires m != 0");
            if (k2.sign() <= 0 || !(k2 < Rational(1)))
                throw InadmissibleInput("cn2 map requires 0 < k2 < 1");
            if (!(spec.w == cn2_profile(m, k2)))
                throw InadmissibleInput("w(z) does not match the cn2 map profile");
            // z = cn^2(m x; k) has period 2 K(k^2) / |m| in x.
            spec.period = 2.0 * ellint_K(k2.to_double()) / std::fabs(m.to_double());
            break;
        }
    }
    return spec;
}

double PotentialSpec::map_z(double x) const {
    switch (map_id) {
        case MapId::none:
            throw MissingMap("this potential has no attached change of variables z(x)");
        case MapId::identity:
            return x;
        case MapId::cn2: {
            const double m = params.at("m").to_double();
            const double k2 = params.at("k2").to_double();
            const double half = 2.0 * ellint_K(k2);  // period of cn^2 in its argument
            double t = std::fmod(m * x, half);
            if (t < 0) t += half;
            const auto j = jacobi_cn_sn_dn(t, k2);
            return j.cn * j.cn;
        }
    }
    throw DomainError("unknown map id");
}

double PotentialSpec::potential(double x) const { return eval_double(u, map_z(x)); }

std::string PotentialSpec::to_json() const {
    nlohmann::ordered_json j;
    j["map_id"] = map_id_name(map_id);
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [key, value] : params) p[key] = value.str();  // std::map: sorted keys
    j["params"] = std::move(p);
    j["w"] = coeff_strings(w);
    j["u"] = coeff_strings(u);
    return j.dump();
}

std::string PotentialSpec::hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json())));
    return std::string(buf);
}

PotentialSpec PotentialSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw MalformedInput("potential document must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "map_id" && key != "params" && key != "w" && key != "u")
            throw MalformedInput("unknown key in potential document: " + key);
    }
    if (!j.contains("map_id") || !j["map_id"].is_string())
        throw MalformedInput("potential document needs a string map_id");
    if (!j.contains("params") || !j["params"].is_object())
        throw MalformedInput("potential document needs a params object");
    if (!j.contains("w") || !j["w"].is_array())
        throw MalformedInput("potential document needs a w array");
    if (!j.contains("u") || !j["u"].is_array())
        throw MalformedInput("potential document needs a u array");

    std::map<std::string, Rational> params;
    for (const auto& [key, value] : j["params"].items()) {
        if (!value.is_string())
            throw MalformedInput("parameter values must be rational strings");
        params[key] = Rational::parse(value.get<std::string>());
    }
    auto read_poly = [](const nlohmann::json& arr, const char* what) {
        std::vector<std::string> parts;
        for (const auto& item : arr) {
            if (!item.is_string())
                throw MalformedInput(std::string(what) + " coefficients must be rational strings");
            parts.push_back(item.get<std::string>());
        }
        return poly_from_strings(parts);
    };
    return make(map_id_from_name(j["map_id"].get<std::string>()), std::move(params),
                read_poly(j["w"], "w"), read_poly(j["u"], "u"));
}

PotentialSpec preset(const std::string& name,
                     const std::map<std::string, Rational>& overrides) {
    std::map<std::string, Rational> params;
    long gap = 0;
    if (name == "constant") {
        params = {{"u0", Rational(0)}};
    } else if (name == "cn2-gap-1" || name == "cn2-gap-2" || name == "cn2-gap-3") {
        params = {{"m", Rational(1)}, {"k2", Rational(1, 2)}};
        gap = name.back() - '0';
    } else {
        throw MalformedInput("unknown preset: " + name);
    }
    for (const auto& [key, value] : overrides) {
        auto it = params.find(key);
        if (it == params.end())
            throw MalformedInput("preset " + name + " has no parameter " + key);
        it->second = value;
    }

    if (name == "constant") {
        return PotentialSpec::make(MapId::identity, params, UniPoly({Rational(1)}),
                                   UniPoly({params.at("u0")}));
    }
    const Rational& m = params.at("m");
    const Rational& k2 = params.at("k2");
    // u(z) = -gap (gap + 1) m^2 k^2 z, the finite-gap amplitude for z = cn^2.
    const Rational amp = -Rational(gap * (gap + 1)) * m * m * k2;
    return PotentialSpec::make(MapId::cn2, params, cn2_profile(m, k2),
                               UniPoly({Rational(0), amp}));
}

std::vector<std::string> preset_names() {
    return {"constant", "cn2-gap-1", "cn2-gap-2", "cn2-gap-3"};
}

}  // namespace greendiag
