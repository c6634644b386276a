// Python bindings. Exact values cross the boundary as fractions.Fraction
// (accepted on input as Fraction, int or "p/q" strings); matrices are lists
// of full rows.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "combphys/diagrams.hpp"
#include "combphys/errors.hpp"
#include "combphys/expformula.hpp"
#include "combphys/io.hpp"
#include "combphys/montecarlo.hpp"
#include "combphys/partitions.hpp"
#include "combphys/riordan.hpp"
#include "combphys/series.hpp"
#include "combphys/triangular.hpp"
#include "combphys/vecfield.hpp"

namespace py = pybind11;
using namespace combphys;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.str());
}

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw ValidationError("booleans are not numbers here");
  return Rational::parse(py::str(h).cast<std::string>());
}

std::vector<Rational> to_rationals(const py::sequence& seq) {
  std::vector<Rational> out;
  out.reserve(py::len(seq));
  for (const auto& item : seq) out.push_back(to_rational(item));
  return out;
}

py::list from_rationals(std::span<const Rational> xs) {
  py::list out;
  for (const auto& x : xs) out.append(fraction(x));
  return out;
}

// A series is given by its EGF coefficients a_0..a_N, or by a catalog name
// together with an order.
Series to_series(const py::object& obj, std::size_t order) {
  if (py::isinstance<py::str>(obj)) return parse_series(obj.cast<std::string>(), order);
  return Series(to_rationals(obj.cast<py::sequence>()));
}

Series to_series(const py::sequence& seq) { return Series(to_rationals(seq)); }

py::list from_series(const Series& s) { return from_rationals(s.coeffs()); }

py::list from_matrix(const LowerMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    py::list row;
    for (std::size_t k = 0; k < m.size(); ++k) row.append(fraction(m.at(i, k)));
    rows.append(row);
  }
  return rows;
}

LowerMatrix to_lower(const py::sequence& rows) {
  const std::size_t n = py::len(rows);
  LowerMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = rows[i].cast<py::sequence>();
    if (py::len(row) != n) throw ValidationError("matrix rows must all have length " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) {
      const Rational x = to_rational(row[k]);
      if (k > i) {
        if (!x.is_zero()) throw DomainError("matrix is not lower triangular");
        continue;
      }
      m(i, k) = x;
    }
  }
  return m;
}

TriMatrix to_tri(const py::sequence& rows) { return TriMatrix(to_lower(rows)); }

py::dict run_dict(const ExperimentResult& r) {
  py::dict d;
  d["hits"] = r.hits;
  d["drawings"] = r.drawings;
  d["estimate"] = fraction(r.estimate);
  d["wilson95"] = py::make_tuple(fraction(r.wilson95.first), fraction(r.wilson95.second));
  d["bound"] = fraction(r.bound);
  d["elapsed_ms"] = r.elapsed_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact combinatorics of Hadamard products, substitution matrices and their generators";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  // ------------------------------------------------------------- series
  m.def("series_mul", [](const py::sequence& a, const py::sequence& b) { return from_series(to_series(a) * to_series(b)); },
        "EGF (binomial convolution) product", py::arg("a"), py::arg("b"));
  m.def("series_compose", [](const py::sequence& f, const py::sequence& phi) {
        return from_series(compose(to_series(f), to_series(phi)));
      }, "f o phi, phi without constant term", py::arg("f"), py::arg("phi"));
  m.def("series_exp", [](const py::sequence& f) { return from_series(series_exp(to_series(f))); }, py::arg("f"));
  m.def("series_log", [](const py::sequence& f) { return from_series(series_log(to_series(f))); }, py::arg("f"));
  m.def("hadamard", [](const py::sequence& a, const py::sequence& b) { return from_series(hadamard(to_series(a), to_series(b))); },
        "coefficientwise product of EGF coefficient sequences", py::arg("a"), py::arg("b"));
  m.def("catalog_series", [](const std::string& name, std::size_t order) { return from_series(parse_series(name, order)); },
        "series by name (z, 1, exp, exp-1, z*exp) or comma-separated coefficients", py::arg("name"), py::arg("order"));

  // --------------------------------------------------------- partitions
  m.def("bell_number", &bell_number, py::arg("n"));
  m.def("enum_partitions", [](int n) {
        std::vector<std::vector<std::vector<int>>> out;
        for (const auto& p : enum_partitions(n)) out.push_back(p.blocks());
        return out;
      }, "all set partitions of {1..n} as lists of blocks", py::arg("n"));
  m.def("partition_type", [](int n, const std::vector<std::vector<int>>& blocks) {
        return partition_type(SetPartition(n, blocks)).counts();
      }, "block size -> number of blocks", py::arg("n"), py::arg("blocks"));
  m.def("stab_order", [](const std::map<int, int>& type) {
        MultiIndex t;
        for (auto [k, a] : type) t.add(k, a);
        return py::int_(py::str(stab_order(t).get_str()));
      }, py::arg("type"));

  // ----------------------------------------------------------- diagrams
  m.def("intersection_matrix", [](int n, const std::vector<std::vector<int>>& p1, const std::vector<std::vector<int>>& p2) {
        return intersection_matrix(SetPartition(n, p1), SetPartition(n, p2));
      }, py::arg("n"), py::arg("p1"), py::arg("p2"));
  m.def("canonical_class", [](const IntMatrix& mat) { return canonical_class(mat).matrix(); },
        "lexicographically least representative under row and column permutations", py::arg("matrix"));
  m.def("diagrams", [](int n, unsigned workers) {
        EnumOptions opts;
        opts.workers = workers;
        std::vector<std::pair<IntMatrix, std::uint64_t>> out;
        {
          py::gil_scoped_release release;
          for (const auto& [d, mult] : enum_diagrams_with_mult(n, opts)) out.emplace_back(d.matrix(), mult);
        }
        return out;
      }, "(canonical matrix, multiplicity) for every diagram with n lines", py::arg("n"), py::arg("workers") = 1);
  m.def("mult_fast", [](const IntMatrix& mat) { return mult_fast(canonical_class(mat)); }, py::arg("matrix"));
  m.def("hadamard_coefficient", [](int n, const std::string& via) {
        const auto poly = via == "bell" ? hadamard_double_sum(n) : hadamard_via_diagrams(n);
        py::dict out;
        for (const auto& [mono, c] : poly.terms()) out[py::make_tuple(mono.first.str(), mono.second.str())] = c;
        return out;
      }, "{(L type, V type): coefficient} of z^n/n! in H(F, G)", py::arg("n"), py::arg("via") = "diagrams");

  // ------------------------------------------------------------ riordan
  m.def("riordan_matrix", [](const py::object& g, const py::object& phi, std::size_t size) {
        return from_matrix(matrix_from_pair(RiordanPair(to_series(g, size - 1), to_series(phi, size - 1)), size).lower());
      }, "matrix of f -> g (f o phi)", py::arg("g"), py::arg("phi"), py::arg("size"));
  m.def("pair_from_matrix", [](const py::sequence& mat) {
        const auto p = pair_from_matrix(to_tri(mat));
        return py::make_tuple(from_series(p.g()), from_series(p.phi()));
      }, py::arg("matrix"));
  m.def("is_substitution_with_prefunction", [](const py::sequence& mat) { return is_substitution_with_prefunction(to_tri(mat)); },
        py::arg("matrix"));
  m.def("tri_mul", [](const py::sequence& a, const py::sequence& b) { return from_matrix(tri_mul(to_tri(a), to_tri(b)).lower()); },
        py::arg("a"), py::arg("b"));
  m.def("fractional_power", [](const py::sequence& mat, const py::object& t) {
        return from_matrix(fractional_power(to_tri(mat), to_rational(t)).lower());
      }, py::arg("matrix"), py::arg("t"));
  m.def("matrix_log", [](const py::sequence& mat) { return from_matrix(tri_log(to_tri(mat))); }, py::arg("matrix"));
  m.def("matrix_exp", [](const py::sequence& mat) { return from_matrix(tri_exp(to_lower(mat)).lower()); }, py::arg("matrix"));

  // ----------------------------------------------------------- vecfield
  m.def("generator_probe", [](const py::sequence& mat, std::uint64_t k) { return from_matrix(generator_probe(to_tri(mat), k)); },
        py::arg("matrix"), py::arg("k"));
  m.def("decompose_operator", [](const py::sequence& gen) {
        const auto op = decompose_operator(to_lower(gen));
        return py::make_tuple(from_series(op.q), from_series(op.v));
      }, "(q, v) with generator = q d/dz + v", py::arg("generator"));
  m.def("operator_matrix", [](const py::sequence& q, const py::sequence& v, std::size_t size) {
        return from_matrix(operator_matrix({to_series(q), to_series(v)}, size));
      }, py::arg("q"), py::arg("v"), py::arg("size"));
  m.def("vector_field", [](const py::object& phi, std::size_t size) {
        py::list rows;
        for (const auto& r : vector_field_table(to_series(phi, size - 1), size))
          rows.append(py::make_tuple(r.n, fraction(r.egf), fraction(r.taylor)));
        return rows;
      }, "(n, egf coefficient, taylor coefficient) of the field of z -> phi", py::arg("phi"), py::arg("size"));

  // --------------------------------------------------------- expformula
  m.def("partial_bell_matrix", [](const std::vector<std::uint64_t>& counts, std::size_t size) {
        return from_matrix(partial_bell_matrix(ConnectedCounts{counts}, size));
      }, "M[n,k] = structures on n points with k components", py::arg("counts"), py::arg("size"));
  m.def("oracle_equivalence", [](int n) { return oracle_equivalence(n); }, py::arg("n"));
  m.def("oracle_idempotent", [](int n) { return oracle_idempotent(n); }, py::arg("n"));

  // --------------------------------------------------------- montecarlo
  m.def("run_experiment",
        [](std::size_t n, std::uint64_t r, std::uint64_t drawings, std::uint64_t seed, unsigned workers,
           const py::object& eps, bool zero_based) {
          ExperimentSpec spec;
          spec.size = n;
          spec.range = EntryRange{r, zero_based};
          spec.drawings = drawings;
          spec.seed = seed;
          spec.workers = workers;
          if (!eps.is_none()) {
            spec.mode = TestMode::tolerance;
            spec.eps = to_rational(eps);
          }
          ExperimentResult res;
          {
            py::gil_scoped_release release;
            res = run_experiment(spec);
          }
          return run_dict(res);
        },
        "seeded Monte-Carlo run; eps=None uses the exact test", py::arg("n"), py::arg("r"), py::arg("drawings"),
        py::arg("seed") = 0, py::arg("workers") = 1, py::arg("eps") = py::none(), py::arg("zero_based") = false);
  m.def("exhaustive_probability", [](std::size_t n, std::uint64_t r, bool zero_based) {
        return fraction(exhaustive_probability(n, EntryRange{r, zero_based}));
      }, py::arg("n"), py::arg("r"), py::arg("zero_based") = false);
  m.def("bound", [](std::size_t n, std::uint64_t r) { return fraction(bound(n, r)); }, py::arg("n"), py::arg("r"));
  m.def("wilson95", [](std::uint64_t hits, std::uint64_t trials) {
        const auto [lo, hi] = wilson95(hits, trials);
        return py::make_tuple(fraction(lo), fraction(hi));
      }, py::arg("hits"), py::arg("trials"));
  m.def("critical_epsilon", [](const py::sequence& mat) { return fraction(critical_epsilon(to_tri(mat))); }, py::arg("matrix"));
}
