#pragma once

// JSON wire formats and spec-string parsing:
//   circle:   {"n1": ["p/q", ...4], "n2": [...], "d1": "p/q", "d2": "p/q"}
//             or {"preset": "B1"}
//   implicit: {"vars": 3|4, "degree": d, "order": "grlex", "coeffs": [...]}
//   curves:   JSON polyline arrays
// Rationals are decimal-free "p/q" strings ("p" when q = 1).

#include <string>

#include "json.hpp"
#include "starsurf/circles.hpp"
#include "starsurf/implicit.hpp"
#include "starsurf/mesh.hpp"
#include "starsurf/topology.hpp"

namespace starsurf {

nlohmann::json circle_to_json(const CircleR& c);
CircleR circle_from_json(const nlohmann::json& j);

// resolves {"preset": "..."} or a full plane-pair circle (converted to an
// exact rational parametrization through a rational point; throws when the
// circle admits none within the search budget)
RationalCircleParam circle_spec_to_param(const nlohmann::json& j);

// preset name like "B1", inline JSON (starts with '{'), or a path to a JSON file
RationalCircleParam resolve_circle_spec(const std::string& spec);

nlohmann::json implicit_to_json(const ImplicitPoly& p);
ImplicitPoly implicit_from_json(const nlohmann::json& j);

nlohmann::json curve_to_json(const PolylineCurve& c);

nlohmann::json certificate_to_json(const std::string& type,
                                   const std::vector<CertificateCheck>& checks);

}  // namespace starsurf
