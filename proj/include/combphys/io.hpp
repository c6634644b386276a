#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "combphys/diagrams.hpp"
#include "combphys/series.hpp"
#include "combphys/triangular.hpp"
#include "combphys/vecfield.hpp"

namespace combphys {

// {"order": N, "egf_coeffs": ["p/q", ...]}
nlohmann::json series_to_json(const Series& s, int decimal_digits = -1);
Series series_from_json(const nlohmann::json& j);

// {"rows": p, "cols": q, "matrix": [[...], ...]}
nlohmann::json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);

// {"size": n, "rows": [[strictly-lower entries of row i, i entries]]}. The
// diagonal is implied: 1 for unitriangular matrices, 0 for generators.
nlohmann::json matrix_to_json(const LowerMatrix& m, int decimal_digits = -1);
TriMatrix tri_matrix_from_json(const nlohmann::json& j);
LowerMatrix strict_matrix_from_json(const nlohmann::json& j);

// Full square CSV (upper entries as 0), one row per line.
void write_matrix_csv(std::ostream& os, const LowerMatrix& m, int decimal_digits = -1);

// Multiplicity corpus: n,canonical_matrix_flat,mult,alpha,beta
void write_diagram_csv(std::ostream& os, int n, const std::map<Diagram, std::uint64_t>& corpus);

// Field table: n,egf_coeff,taylor_coeff
void write_field_csv(std::ostream& os, const std::vector<FieldCoefficient>& rows, int decimal_digits = -1);

// Series by name or coefficient list, truncated/zero-extended to `order`:
//   "z", "1", "exp", "exp-1", "z*exp", "0", or EGF coefficients "1,1/2,0".
Series parse_series(std::string_view text, std::size_t order);

// Rational as fraction string, or fixed-point when digits >= 0.
std::string render(const Rational& r, int decimal_digits = -1);

}  // namespace combphys
