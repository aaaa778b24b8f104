#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "siegelarc/maxrep.hpp"

namespace arc {

// JSON forms:
//   Lagrangian        4x2 nested array (orthonormal basis, rows outer)
//   SpMap/Reflection  {"matrix": 4x4 nested array, "kind": "symplectic"|"antisymplectic"}
//   WeylVector        [x1, x2]
//   ArcCoordinates    {"b","c","d","alpha1","alpha2" (null = collapsed),"type"}
//   KElement          "st" | "ex" | "k:<theta>"
//   OrderedHexagon    {"sixTuple": 6 Lagrangians (working tuple), "coords": ...}

nlohmann::json toJson(const Lagrangian& l);
nlohmann::json toJson(const Mat4& m);
nlohmann::json toJson(const SpMap& g);
nlohmann::json toJson(const WeylVector& v);
nlohmann::json toJson(const ArcCoordinates& a);
nlohmann::json toJson(const OrderedHexagon& h);
nlohmann::json toJson(const MaxRepReport& r);

std::string kElementString(const KElement& k);
std::optional<KElement> parseKElement(const std::string& s);

// Full representation document:
// {"parameters", "reflections", "generators": {"g","h"}, "validation"}.
nlohmann::json repDocument(const SParameters& p, const W3MaxRep& w, const PopRep& pop,
                           const MaxRepReport& report);

Lagrangian lagrangianFromJson(const nlohmann::json& j);
ArcCoordinates coordsFromJson(const nlohmann::json& j);
OrderedHexagon hexagonFromJson(const nlohmann::json& j);

}  // namespace arc
