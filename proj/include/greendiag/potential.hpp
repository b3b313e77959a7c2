#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greendiag/poly.hpp"
#include "greendiag/rational.hpp"

namespace greendiag {

// Change of variables z(x) used to bring the potential to polynomial form.
enum class MapId { none, identity, cn2 };

std::string map_id_name(MapId id);
MapId map_id_from_name(const std::string& name);

// A potential in transformed coordinates: the polynomial u(z), the map z(x)
// (named by map_id plus its parameters), and w(z) = (dz/dx)^2 expressed as a
// polynomial in z.  `period` is the period of z(x) when the map is periodic.
struct PotentialSpec {
    MapId map_id = MapId::none;
    std::map<std::string, Rational> params;
    UniPoly w;
    UniPoly u;
    std::optional<double> period;

    // Validates the bundle (w consistent with the named map, parameters in
    // range) and computes the period where the map defines one.
    static PotentialSpec make(MapId map_id, std::map<std::string, Rational> params,
                              UniPoly w, UniPoly u);

    double map_z(double x) const;      // z(x); throws MissingMap when map_id is none
    double potential(double x) const;  // u(z(x))

    std::string to_json() const;  // canonical serialization (stable key order)
    std::string hash() const;     // FNV-1a 64-bit hex over the canonical form
    static PotentialSpec from_json(const std::string& text);

    friend bool operator==(const PotentialSpec& a, const PotentialSpec& b) {
        return a.map_id == b.map_id && a.params == b.params && a.w == b.w && a.u == b.u;
    }
};

// Built-in example potentials.  Overrides replace default parameter values;
// unknown keys are rejected.
PotentialSpec preset(const std::string& name,
                     const std::map<std::string, Rational>& overrides = {});
std::vector<std::string> preset_names();

}  // namespace greendiag
