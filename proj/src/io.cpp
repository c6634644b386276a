#include "combphys/io.hpp"

#include <sstream>

#include "combphys/errors.hpp"

namespace combphys {

namespace {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ValidationError("expected a fraction string, got " + j.dump());
}

LowerMatrix lower_from_json(const nlohmann::json& j, const Rational& diagonal) {
  const auto size = j.at("size").get<std::size_t>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != size) {
    throw ValidationError("matrix json: expected " + std::to_string(size) + " rows");
  }
  LowerMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != i) {
      throw ValidationError("matrix json: row " + std::to_string(i) + " must hold " + std::to_string(i) +
                            " strictly-lower entries");
    }
    for (std::size_t k = 0; k < i; ++k) m(i, k) = rational_from_json(row[k]);
    m(i, i) = diagonal;
  }
  return m;
}

}  // namespace

std::string render(const Rational& r, int decimal_digits) {
  return decimal_digits >= 0 ? r.decimal(decimal_digits) : r.str();
}

nlohmann::json series_to_json(const Series& s, int decimal_digits) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& a : s.coeffs()) coeffs.push_back(render(a, decimal_digits));
  return {{"order", s.order()}, {"egf_coeffs", coeffs}};
}

Series series_from_json(const nlohmann::json& j) {
  const auto order = j.at("order").get<std::size_t>();
  const auto& coeffs = j.at("egf_coeffs");
  if (!coeffs.is_array() || coeffs.size() != order + 1) {
    throw ValidationError("series json: egf_coeffs must have order+1 entries");
  }
  std::vector<Rational> a;
  a.reserve(coeffs.size());
  for (const auto& c : coeffs) a.push_back(rational_from_json(c));
  return Series(std::move(a));
}

nlohmann::json diagram_to_json(const Diagram& d) {
  return {{"rows", d.rows()}, {"cols", d.cols()}, {"matrix", d.matrix()}};
}

Diagram diagram_from_json(const nlohmann::json& j) {
  const auto m = j.at("matrix").get<IntMatrix>();
  if (static_cast<int>(m.size()) != j.at("rows").get<int>() ||
      (!m.empty() && static_cast<int>(m.front().size()) != j.at("cols").get<int>())) {
    throw ValidationError("diagram json: rows/cols disagree with matrix shape");
  }
  return canonical_class(m);
}

nlohmann::json matrix_to_json(const LowerMatrix& m, int decimal_digits) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < i; ++k) row.push_back(render(m(i, k), decimal_digits));
    rows.push_back(std::move(row));
  }
  return {{"size", m.size()}, {"rows", rows}};
}

TriMatrix tri_matrix_from_json(const nlohmann::json& j) {
  return TriMatrix(lower_from_json(j, Rational(1)));
}

LowerMatrix strict_matrix_from_json(const nlohmann::json& j) { return lower_from_json(j, Rational(0)); }

void write_matrix_csv(std::ostream& os, const LowerMatrix& m, int decimal_digits) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) os << ',';
      os << render(m.at(i, k), decimal_digits);
    }
    os << '\n';
  }
}

void write_diagram_csv(std::ostream& os, int n, const std::map<Diagram, std::uint64_t>& corpus) {
  os << "n,canonical_matrix_flat,mult,alpha,beta\n";
  for (const auto& [d, mult] : corpus) {
    const SpotTypes t = spot_types(d);
    os << n << ',' << d.flat_str() << ',' << mult << ',' << t.alpha.str() << ',' << t.beta.str() << '\n';
  }
}

void write_field_csv(std::ostream& os, const std::vector<FieldCoefficient>& rows, int decimal_digits) {
  os << "n,egf_coeff,taylor_coeff\n";
  for (const auto& r : rows) {
    os << r.n << ',' << render(r.egf, decimal_digits) << ',' << render(r.taylor, decimal_digits) << '\n';
  }
}

Series parse_series(std::string_view text, std::size_t order) {
  if (text == "z") return Series::variable(order);
  if (text == "1") return Series::one(order);
  if (text == "0") return Series::zero(order);
  if (text == "exp") return Series::exponential(order);
  if (text == "exp-1") return Series::exponential(order).with(0, Rational(0));
  if (text == "z*exp") return times_variable(Series::exponential(order));
  std::vector<Rational> coeffs;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) coeffs.push_back(Rational::parse(item));
  if (coeffs.empty()) {
    throw ValidationError("empty series specification");
  }
  return Series(std::move(coeffs)).truncated(order);
}

}  // namespace combphys
