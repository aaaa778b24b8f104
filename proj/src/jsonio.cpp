#include "siegelarc/jsonio.hpp"

#include <cmath>

#include "siegelarc/errors.hpp"

namespace arc {

using nlohmann::json;

json toJson(const Lagrangian& l) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) rows.push_back({l.at(r, 0), l.at(r, 1)});
    return rows;
}

json toJson(const Mat4& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) row.push_back(m.at(r, c));
        rows.push_back(row);
    }
    return rows;
}

json toJson(const SpMap& g) {
    return {{"matrix", toJson(g.m)},
            {"kind", g.kind == MapKind::Symplectic ? "symplectic" : "antisymplectic"}};
}

json toJson(const WeylVector& v) { return {v.x1, v.x2}; }

json toJson(const ArcCoordinates& a) {
    json j;
    j["b"] = toJson(a.b);
    j["c"] = toJson(a.c);
    j["d"] = toJson(a.d);
    j["alpha1"] = a.alpha1 ? json(*a.alpha1) : json(nullptr);
    j["alpha2"] = a.alpha2 ? json(*a.alpha2) : json(nullptr);
    j["type"] = genericityTag(a.type);
    return j;
}

json toJson(const OrderedHexagon& h) {
    json six = json::array();
    for (const auto& l : h.sixTuple) six.push_back(toJson(l));
    return {{"sixTuple", six}, {"coords", toJson(coordsFromHexagon(h))}};
}

json toJson(const MaxRepReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    return {{"checks", checks}, {"allPass", r.allPass()}};
}

std::string kElementString(const KElement& k) {
    if (k.idBranch) return "st";
    if (k.theta == 0.0) return "ex";
    return "k:" + std::to_string(k.theta);
}

std::optional<KElement> parseKElement(const std::string& s) {
    if (s == "st") return KElement::id();
    if (s == "ex") return KElement::flip(0.0);
    if (s.rfind("k:", 0) == 0) {
        try {
            size_t used = 0;
            const double theta = std::stod(s.substr(2), &used);
            if (used != s.size() - 2 || !std::isfinite(theta)) return std::nullopt;
            return KElement::flip(theta);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

json repDocument(const SParameters& p, const W3MaxRep& w, const PopRep& pop,
                 const MaxRepReport& report) {
    json params;
    params["coords"] = toJson(p.coords);
    params["refl"] = {kElementString(p.r1), kElementString(p.r2), kElementString(p.r3)};
    json refls = json::array();
    for (const Reflection& r : {w.rho1, w.rho2, w.rho3}) refls.push_back(toJson(r.map));
    return {{"parameters", params},
            {"reflections", refls},
            {"generators", {{"g", toJson(pop.g)}, {"h", toJson(pop.h)}}},
            {"validation", toJson(report)}};
}

Lagrangian lagrangianFromJson(const json& j) {
    if (!j.is_array() || j.size() != 4) throw Error("Lagrangian JSON must be a 4x2 array");
    std::array<double, 8> basis{};
    for (int r = 0; r < 4; ++r) {
        if (!j[r].is_array() || j[r].size() != 2)
            throw Error("Lagrangian JSON must be a 4x2 array");
        basis[2 * r] = j[r][0].get<double>();
        basis[2 * r + 1] = j[r][1].get<double>();
    }
    return Lagrangian::fromBasis(basis);
}

ArcCoordinates coordsFromJson(const json& j) {
    auto vec = [](const json& v) -> WeylVector {
        if (!v.is_array() || v.size() != 2) throw Error("side vector JSON must be [x1, x2]");
        return {v[0].get<double>(), v[1].get<double>()};
    };
    ArcCoordinates a;
    a.b = vec(j.at("b"));
    a.c = vec(j.at("c"));
    a.d = vec(j.at("d"));
    if (j.contains("alpha1") && !j["alpha1"].is_null()) a.alpha1 = j["alpha1"].get<double>();
    if (j.contains("alpha2") && !j["alpha2"].is_null()) a.alpha2 = j["alpha2"].get<double>();
    if (j.contains("type")) {
        const auto t = genericityFromTag(j["type"].get<std::string>());
        if (!t) throw Error("unknown genericity tag in coordinates JSON");
        a.type = *t;
    } else {
        a.type = classifyVectors(a.b, a.c, a.d);
    }
    return a;
}

OrderedHexagon hexagonFromJson(const json& j) {
    const json& six = j.at("sixTuple");
    if (!six.is_array() || six.size() != 6)
        throw Error("hexagon JSON needs a sixTuple of six Lagrangians");
    std::array<Lagrangian, 6> t;
    for (int i = 0; i < 6; ++i) t[i] = lagrangianFromJson(six[i]);
    return hexagonFromSixTuple(t, SixTupleConvention::Mixed);
}

}  // namespace arc
