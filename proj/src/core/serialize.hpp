#pragma once

#include "special.hpp"

#include "json.hpp"

namespace cmmod {

using json = nlohmann::json;

// Integers are written as JSON numbers when they fit in 64 bits, else as
// decimal strings; readers accept both. Matrix entries may also be "p/q".
json to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);

json to_json(const CMPointId& p);              // {"d": D, "f": [a, b, c]}
json to_json(const ConstantValue& v);          // {"cm": ...} or {"orb": [[a,b],[0,d]]}
json to_json(const IntMat2& m);                // [[a,b],[c,d]]
json to_json(const PreSpecialDatum& d);
json to_json(const SpecialVariety& x);
json to_json(const ComponentSet& cs);
json to_json(const EquationSystem& s);

CMPointId cm_point_from_json(const json& j);
ConstantValue constant_from_json(const json& j);
// Rational entries are scaled to the primitive integral form.
PrimIntMat2 prim_matrix_from_json(const json& j);
PreSpecialDatum datum_from_json(const json& j);
EquationSystem system_from_json(const json& j);

// Parse text, mapping JSON syntax errors to ParseError.
json parse_json_text(const std::string& text);

} // namespace cmmod
