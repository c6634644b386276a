// combphys: command-line front end to the library.
//
//   combphys <subcommand> [options] [--format json|csv|pretty] [--decimal D]
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 resource guard.
// Every seeded subcommand prints the same bytes for the same seed whatever
// --workers is; wall-clock time is only printed with --timing.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "combphys/diagrams.hpp"
#include "combphys/errors.hpp"
#include "combphys/expformula.hpp"
#include "combphys/io.hpp"
#include "combphys/montecarlo.hpp"
#include "combphys/riordan.hpp"
#include "combphys/triangular.hpp"
#include "combphys/vecfield.hpp"

namespace {

using namespace combphys;
using nlohmann::json;

constexpr int kSchemaVersion = 1;

enum class Format { json, csv, pretty };

struct Output {
  Format format = Format::json;
  int decimal = -1;

  std::string num(const Rational& r) const { return render(r, decimal); }
};

json envelope(const std::string& command) { return json{{"schema", kSchemaVersion}, {"command", command}}; }

void emit_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// Right-aligned table of already rendered cells.
void emit_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) std::cout << "  ";
      std::cout << std::setw(static_cast<int>(width[c])) << row[c];
    }
    std::cout << '\n';
  }
}

void emit_csv(const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) std::cout << ',';
      std::cout << row[c];
    }
    std::cout << '\n';
  }
}

std::vector<std::vector<std::string>> square_cells(const LowerMatrix& m, const Output& out) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> row;
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(out.num(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_matrix(const std::string& command, const LowerMatrix& m, const Output& out, json extra = json::object()) {
  switch (out.format) {
    case Format::json: {
      json j = envelope(command);
      j["matrix"] = matrix_to_json(m, out.decimal);
      for (auto& [k, v] : extra.items()) j[k] = v;
      emit_json(j);
      break;
    }
    case Format::csv:
      write_matrix_csv(std::cout, m, out.decimal);
      break;
    case Format::pretty:
      emit_table(square_cells(m, out));
      for (auto& [k, v] : extra.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      break;
  }
}

json series_json(const Series& s, const Output& out) { return series_to_json(s, out.decimal); }

std::string series_line(const Series& s, const Output& out) {
  std::string text;
  for (std::size_t n = 0; n <= s.order(); ++n) text += (n ? "," : "") + out.num(s[n]);
  return text;
}

Limits limits_from_env() {
  Limits limits;
  if (const char* budget = std::getenv("COMBPHYS_BUDGET")) {
    try {
      std::size_t used = 0;
      const double value = std::stod(budget, &used);
      if (used != std::string(budget).size() || !(value > 0)) throw std::invalid_argument(budget);
      limits.exhaustive_budget = value;
    } catch (const std::exception&) {
      throw ValidationError(std::string("COMBPHYS_BUDGET must be a positive number, got '") + budget + "'");
    }
  }
  return limits;
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    try {
      if (dash != std::string::npos) {
        const auto lo = std::stoull(item.substr(0, dash));
        const auto hi = std::stoull(item.substr(dash + 1));
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        out.push_back(std::stoull(item));
      }
    } catch (const std::logic_error&) {
      throw ValidationError("bad list item '" + item + "' (expected integers or ranges like 2-50)");
    }
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

// Matrix rows entered as "1,0,0/2,1,0/..." or "a b/c d"; used by `mult`.
IntMatrix parse_int_matrix(const std::string& text) {
  IntMatrix m;
  std::istringstream rows(text);
  std::string row_text;
  while (std::getline(rows, row_text, '/')) {
    for (auto& ch : row_text)
      if (ch == ',') ch = ' ';
    std::istringstream cells(row_text);
    std::vector<int> row;
    std::string cell;
    while (cells >> cell) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw ValidationError("bad matrix entry '" + cell + "'");
      }
    }
    m.push_back(std::move(row));
  }
  return m;
}

unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

struct PairArgs {
  std::string g = "1";
  std::string phi = "z";
  std::size_t size = 6;

  void attach(CLI::App* sub) {
    sub->add_option("--g", g, "prefunction g: catalog name (1, exp, ...) or EGF coefficients \"1,1/2,...\"")
        ->capture_default_str();
    sub->add_option("--phi", phi, "substitution phi: catalog name (z, exp-1, z*exp, ...) or EGF coefficients")
        ->capture_default_str();
    sub->add_option("--size", size, "matrix size (rows 0..size-1)")->capture_default_str()->check(CLI::Range(1, 64));
  }

  RiordanPair pair() const {
    const std::size_t order = size - 1;
    return RiordanPair(parse_series(g, order), parse_series(phi, order));
  }
};

void cmd_hadamard(int n, const std::string& via, const Output& out) {
  const TwoAlphabetPoly poly = via == "bell" ? hadamard_double_sum(n) : hadamard_via_diagrams(n);
  switch (out.format) {
    case Format::json: {
      json j = envelope("hadamard");
      j["n"] = n;
      j["via"] = via;
      json terms = json::array();
      for (const auto& [mono, c] : poly.terms()) terms.push_back({{"L", mono.first.str()}, {"V", mono.second.str()}, {"coeff", c}});
      j["terms"] = terms;
      emit_json(j);
      break;
    }
    case Format::csv:
      std::cout << "L,V,coeff\n";
      for (const auto& [mono, c] : poly.terms()) std::cout << mono.first.str() << ',' << mono.second.str() << ',' << c << '\n';
      break;
    case Format::pretty:
      std::cout << poly.str() << '\n';
      break;
  }
}

void cmd_diagrams(int n, unsigned workers, const Output& out) {
  EnumOptions options;
  options.workers = workers;
  const auto corpus = enum_diagrams_with_mult(n, options);
  std::uint64_t total = 0;
  for (const auto& [d, m] : corpus) total += m;
  switch (out.format) {
    case Format::json: {
      json j = envelope("diagrams");
      j["n"] = n;
      j["count"] = corpus.size();
      j["total_mult"] = total;
      json list = json::array();
      for (const auto& [d, m] : corpus) {
        const SpotTypes t = spot_types(d);
        list.push_back({{"matrix", d.matrix()}, {"mult", m}, {"alpha", t.alpha.str()}, {"beta", t.beta.str()}});
      }
      j["diagrams"] = list;
      emit_json(j);
      break;
    }
    case Format::csv:
      write_diagram_csv(std::cout, n, corpus);
      break;
    case Format::pretty: {
      std::vector<std::vector<std::string>> rows{{"matrix", "mult", "alpha", "beta"}};
      for (const auto& [d, m] : corpus) {
        const SpotTypes t = spot_types(d);
        rows.push_back({d.flat_str(), std::to_string(m), t.alpha.str(), t.beta.str()});
      }
      emit_table(rows);
      std::cout << corpus.size() << " diagrams, total multiplicity " << total << '\n';
      break;
    }
  }
}

void cmd_mult(const std::string& matrix_text, bool brute, const Output& out) {
  const Diagram d = canonical_class(parse_int_matrix(matrix_text));
  const SpotTypes t = spot_types(d);
  const std::uint64_t fast = mult_fast(d);
  std::optional<std::uint64_t> slow;
  if (brute) {
    const auto corpus = enum_diagrams_with_mult(d.lines(), EnumOptions{Limits{}, default_workers()});
    const auto it = corpus.find(d);
    slow = it == corpus.end() ? 0 : it->second;
  }
  switch (out.format) {
    case Format::json: {
      json j = envelope("mult");
      j["diagram"] = diagram_to_json(d);
      j["lines"] = d.lines();
      j["alpha"] = t.alpha.str();
      j["beta"] = t.beta.str();
      j["mult"] = fast;
      j["mult_brute"] = slow ? json(*slow) : json(nullptr);
      emit_json(j);
      break;
    }
    case Format::csv:
      std::cout << "canonical_matrix_flat,lines,mult,mult_brute,alpha,beta\n"
                << d.flat_str() << ',' << d.lines() << ',' << fast << ',' << (slow ? std::to_string(*slow) : "") << ','
                << t.alpha.str() << ',' << t.beta.str() << '\n';
      break;
    case Format::pretty:
      std::cout << "canonical " << d.flat_str() << "\nlines " << d.lines() << "\nalpha " << t.alpha.str() << "\nbeta "
                << t.beta.str() << "\nmult " << fast << '\n';
      if (slow) std::cout << "mult (brute force) " << *slow << '\n';
      break;
  }
}

void cmd_riordan(const PairArgs& args, const std::string& from_file, const Output& out) {
  if (!from_file.empty()) {
    std::ifstream in(from_file);
    if (!in) throw ValidationError("cannot read " + from_file);
    json input;
    try {
      input = json::parse(in);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("matrix json: ") + e.what());
    }
    const TriMatrix m = tri_matrix_from_json(input.contains("matrix") ? input.at("matrix") : input);
    const RiordanPair p = pair_from_matrix(m);
    const bool member = is_substitution_with_prefunction(m);
    switch (out.format) {
      case Format::json: {
        json j = envelope("riordan");
        j["is_substitution_with_prefunction"] = member;
        j["g"] = series_json(p.g(), out);
        j["phi"] = series_json(p.phi(), out);
        emit_json(j);
        break;
      }
      case Format::csv:
        std::cout << "n,g,phi\n";
        for (std::size_t n = 0; n <= p.order(); ++n) std::cout << n << ',' << out.num(p.g()[n]) << ',' << out.num(p.phi()[n]) << '\n';
        break;
      case Format::pretty:
        std::cout << "g   " << series_line(p.g(), out) << "\nphi " << series_line(p.phi(), out)
                  << "\nsubstitution with prefunction: " << (member ? "yes" : "no") << '\n';
        break;
    }
    return;
  }
  const RiordanPair p = args.pair();
  emit_matrix("riordan", matrix_from_pair(p, args.size).lower(), out,
              json{{"g", series_json(p.g(), out)}, {"phi", series_json(p.phi(), out)}});
}

void cmd_power(const PairArgs& args, const std::string& t_text, const Output& out) {
  const Rational t = Rational::parse(t_text);
  const TriMatrix m = fractional_power(matrix_from_pair(args.pair(), args.size), t);
  const RiordanPair p = pair_from_matrix(m);
  emit_matrix("power", m.lower(), out,
              json{{"t", t.str()},
                   {"is_substitution_with_prefunction", is_substitution_with_prefunction(m)},
                   {"g", series_json(p.g(), out)},
                   {"phi", series_json(p.phi(), out)}});
}

void cmd_log(const PairArgs& args, std::uint64_t probe, const Output& out) {
  const TriMatrix m = matrix_from_pair(args.pair(), args.size);
  if (probe > 0) {
    const LowerMatrix approx = generator_probe(m, probe);
    const LowerMatrix err = approx - generator(m);
    Rational worst;
    for (std::size_t i = 0; i < err.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) worst = std::max(worst, abs(err(i, j)));
    emit_matrix("log", approx, out, json{{"probe", probe}, {"max_abs_error", out.num(worst)}});
    return;
  }
  const LowerMatrix l = generator(m);
  const VectorFieldOp op = decompose_operator(l);
  emit_matrix("log", l, out, json{{"q", series_json(op.q, out)}, {"v", series_json(op.v, out)}});
}

void cmd_field(const std::string& phi_text, std::size_t size, const Output& out) {
  const auto rows = vector_field_table(parse_series(phi_text, size - 1), size);
  switch (out.format) {
    case Format::json: {
      json j = envelope("field");
      j["phi"] = phi_text;
      j["size"] = size;
      json list = json::array();
      for (const auto& r : rows) list.push_back({{"n", r.n}, {"egf_coeff", out.num(r.egf)}, {"taylor_coeff", out.num(r.taylor)}});
      j["coefficients"] = list;
      emit_json(j);
      break;
    }
    case Format::csv:
      write_field_csv(std::cout, rows, out.decimal);
      break;
    case Format::pretty: {
      std::vector<std::vector<std::string>> cells{{"n", "egf_coeff", "taylor_coeff"}};
      for (const auto& r : rows) cells.push_back({std::to_string(r.n), out.num(r.egf), out.num(r.taylor)});
      emit_table(cells);
      break;
    }
  }
}

void cmd_expformula(const std::string& family, std::size_t size, bool with_oracle, const Output& out) {
  const std::size_t length = size > 1 ? size - 1 : 1;
  ConnectedCounts c;
  if (family == "equivalence") {
    c = ConnectedCounts::equivalence_relations(length);
  } else if (family == "idempotent") {
    c = ConnectedCounts::idempotent_endofunctions(length);
  } else {
    for (auto v : parse_list(family)) c.counts.push_back(v);
  }
  const LowerMatrix m = partial_bell_matrix(c, size);
  json extra = json::object();
  if (with_oracle) {
    if (family != "equivalence" && family != "idempotent") {
      throw ValidationError("--oracle needs --family equivalence or idempotent");
    }
    bool agree = true;
    json rows = json::object();
    for (int n = 1; n < static_cast<int>(size); ++n) {
      const auto tally = family == "equivalence" ? oracle_equivalence(n) : oracle_idempotent(n);
      json row = json::object();
      for (const auto& [k, count] : tally) {
        row[std::to_string(k)] = count;
        agree = agree && m(static_cast<std::size_t>(n), static_cast<std::size_t>(k)) == Rational(count);
      }
      for (int k = 1; k <= n; ++k) {
        if (!tally.count(k)) agree = agree && m(static_cast<std::size_t>(n), static_cast<std::size_t>(k)).is_zero();
      }
      rows[std::to_string(n)] = row;
    }
    extra["oracle"] = rows;
    extra["oracle_agrees"] = agree;
  }
  emit_matrix("expformula", m, out, extra);
}

// --------------------------------- montecarlo -------------------------------

struct McArgs {
  std::string action = "run";
  std::size_t n = 4;
  std::uint64_t r = 10;
  std::uint64_t drawings = 275;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string eps = "0";
  bool zero_based = false;
  bool timing = false;
  bool with_exact = false;
  std::string ns = "3,4,5";
  std::string rs = "2-10";
  std::string targets = "1/100,327/10000,1/10,1/2";
};

json mc_run_json(const ExperimentSpec& spec, const ExperimentResult& res, const McArgs& args, const Output& out,
                 const std::optional<Rational>& exact) {
  json j;
  j["n"] = spec.size;
  j["r"] = spec.range.r;
  j["zero_based"] = spec.range.zero_based;
  j["drawings"] = spec.drawings;
  j["seed"] = spec.seed;
  j["mode"] = spec.mode == TestMode::exact ? "exact" : "tolerance";
  j["eps"] = out.num(spec.eps);
  j["hits"] = res.hits;
  j["estimate"] = out.num(res.estimate);
  j["wilson95"] = {out.num(res.wilson95.first), out.num(res.wilson95.second)};
  j["bound"] = out.num(res.bound);
  j["exhaustive"] = exact ? json(out.num(*exact)) : json(nullptr);
  j["elapsed_ms"] = args.timing ? json(res.elapsed_ms) : json(nullptr);
  return j;
}

std::vector<std::string> mc_run_cells(const ExperimentSpec& spec, const ExperimentResult& res, const McArgs& args,
                                      const Output& out, const std::optional<Rational>& exact) {
  std::vector<std::string> row{std::to_string(spec.size),
                               std::to_string(spec.range.r),
                               std::to_string(spec.drawings),
                               std::to_string(spec.seed),
                               spec.mode == TestMode::exact ? "exact" : "tolerance",
                               out.num(spec.eps),
                               std::to_string(res.hits),
                               out.num(res.estimate),
                               out.num(res.wilson95.first),
                               out.num(res.wilson95.second),
                               out.num(res.bound),
                               exact ? out.num(*exact) : std::string()};
  if (args.timing) {
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(3) << res.elapsed_ms;
    row.push_back(ms.str());
  }
  return row;
}

std::vector<std::string> mc_run_header(const McArgs& args) {
  std::vector<std::string> h{"n",         "r",        "drawings", "seed",  "mode",       "eps",
                             "hits",      "estimate", "wilson_lo", "wilson_hi", "bound", "exhaustive"};
  if (args.timing) h.push_back("elapsed_ms");
  return h;
}

std::optional<Rational> try_exhaustive(std::size_t n, const EntryRange& range, const Limits& limits) {
  try {
    return exhaustive_probability(n, range, limits);
  } catch (const ResourceError&) {
    return std::nullopt;
  }
}

void emit_runs(const std::string& action, const std::vector<json>& runs,
               const std::vector<std::vector<std::string>>& cells, const McArgs& args, const Output& out) {
  switch (out.format) {
    case Format::json: {
      json j = envelope("montecarlo");
      j["action"] = action;
      if (runs.size() == 1) {
        for (auto& [k, v] : runs.front().items()) j[k] = v;
      } else {
        j["rows"] = runs;
      }
      emit_json(j);
      break;
    }
    case Format::csv: {
      std::vector<std::vector<std::string>> rows{mc_run_header(args)};
      rows.insert(rows.end(), cells.begin(), cells.end());
      emit_csv(rows);
      break;
    }
    case Format::pretty: {
      std::vector<std::vector<std::string>> rows{mc_run_header(args)};
      rows.insert(rows.end(), cells.begin(), cells.end());
      emit_table(rows);
      break;
    }
  }
}

void cmd_montecarlo(const McArgs& args, unsigned workers, const Output& out) {
  const Limits limits = limits_from_env();
  ExperimentSpec base;
  base.size = args.n;
  base.range = EntryRange{args.r, args.zero_based};
  base.drawings = args.drawings;
  base.seed = args.seed;
  base.workers = workers;
  if (args.mode == "tolerance") {
    base.mode = TestMode::tolerance;
    base.eps = Rational::parse(args.eps);
  } else if (args.mode != "exact") {
    throw ValidationError("--mode must be exact or tolerance");
  }

  if (args.action == "run") {
    const auto res = run_experiment(base);
    std::optional<Rational> exact;
    if (args.with_exact) exact = exhaustive_probability(base.size, base.range, limits);
    emit_runs("run", {mc_run_json(base, res, args, out, exact)}, {mc_run_cells(base, res, args, out, exact)}, args, out);
    return;
  }

  if (args.action == "table") {
    // The experiment grid: sizes 3, 4, 10 with 300, 275, 1500 draws, each
    // over the ranges 10, 100, 10000, exact test.
    const std::vector<std::pair<std::size_t, std::uint64_t>> sizes{{3, 300}, {4, 275}, {10, 1500}};
    const std::vector<std::uint64_t> ranges{10, 100, 10000};
    std::vector<json> runs;
    std::vector<std::vector<std::string>> cells;
    for (const auto& [n, draws] : sizes) {
      for (const auto r : ranges) {
        ExperimentSpec spec = base;
        spec.size = n;
        spec.range = EntryRange{r, args.zero_based};
        spec.drawings = draws;
        spec.mode = TestMode::exact;
        spec.eps = 0;
        const auto res = run_experiment(spec);
        const auto exact = try_exhaustive(n, spec.range, limits);
        runs.push_back(mc_run_json(spec, res, args, out, exact));
        cells.push_back(mc_run_cells(spec, res, args, out, exact));
      }
    }
    emit_runs("table", runs, cells, args, out);
    return;
  }

  if (args.action == "exhaustive") {
    const Rational p = exhaustive_probability(base.size, base.range, limits);
    const Rational b = bound(base.size, base.range.r);
    switch (out.format) {
      case Format::json: {
        json j = envelope("montecarlo");
        j["action"] = "exhaustive";
        j["n"] = base.size;
        j["r"] = base.range.r;
        j["zero_based"] = base.range.zero_based;
        j["p_exact"] = out.num(p);
        j["bound"] = out.num(b);
        emit_json(j);
        break;
      }
      case Format::csv:
        emit_csv({{"n", "r", "p_exact", "bound"}, {std::to_string(base.size), std::to_string(base.range.r), out.num(p), out.num(b)}});
        break;
      case Format::pretty:
        std::cout << "p_exact " << out.num(p) << "\nbound   " << out.num(b) << '\n';
        break;
    }
    return;
  }

  if (args.action == "conjecture") {
    std::vector<std::size_t> ns;
    for (auto v : parse_list(args.ns)) ns.push_back(static_cast<std::size_t>(v));
    const auto rs = parse_list(args.rs);
    const auto rows = conjecture_table(ns, rs, limits);
    std::vector<std::vector<std::string>> cells{{"n", "r", "p_exact", "bound", "ratio"}};
    json list = json::array();
    for (const auto& row : rows) {
      cells.push_back({std::to_string(row.n), std::to_string(row.r), out.num(row.p_exact), out.num(row.bound), out.num(row.ratio)});
      list.push_back({{"n", row.n}, {"r", row.r}, {"p_exact", out.num(row.p_exact)}, {"bound", out.num(row.bound)},
                      {"ratio", out.num(row.ratio)}});
    }
    if (out.format == Format::json) {
      json j = envelope("montecarlo");
      j["action"] = "conjecture";
      j["rows"] = list;
      emit_json(j);
    } else if (out.format == Format::csv) {
      emit_csv(cells);
    } else {
      emit_table(cells);
    }
    return;
  }

  if (args.action == "sweep") {
    const auto profile = tolerance_profile(base);
    std::vector<std::vector<std::string>> cells{{"target", "eps", "acceptance"}};
    json list = json::array();
    for (const auto& text : [&] {
           std::vector<std::string> items;
           std::istringstream in(args.targets);
           std::string item;
           while (std::getline(in, item, ',')) items.push_back(item);
           return items;
         }()) {
      const Rational target = Rational::parse(text);
      const auto eps = profile.epsilon_for(target);
      const std::string eps_text = eps ? out.num(*eps) : std::string();
      const std::string acc_text = eps ? out.num(profile.acceptance(*eps)) : std::string();
      cells.push_back({out.num(target), eps_text, acc_text});
      list.push_back({{"target", out.num(target)},
                      {"eps", eps ? json(eps_text) : json(nullptr)},
                      {"acceptance", eps ? json(acc_text) : json(nullptr)}});
    }
    if (out.format == Format::json) {
      json j = envelope("montecarlo");
      j["action"] = "sweep";
      j["n"] = base.size;
      j["r"] = base.range.r;
      j["zero_based"] = base.range.zero_based;
      j["drawings"] = base.drawings;
      j["seed"] = base.seed;
      j["exact_acceptance"] = out.num(profile.acceptance(0));
      j["sweep"] = list;
      emit_json(j);
    } else if (out.format == Format::csv) {
      emit_csv(cells);
    } else {
      emit_table(cells);
    }
    return;
  }

  throw ValidationError("unknown montecarlo action '" + args.action + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial physics toolkit: diagrams, substitution matrices, generators, random unipotents"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  std::string format = "json";
  app.add_option("--format", format, "output format: json | csv | pretty")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--decimal", out.decimal, "render numbers in fixed point with this many digits (display only)")
      ->check(CLI::Range(0, 60));
  unsigned workers = 1;
  app.add_option("--workers", workers, "worker threads (0 = all cores); never changes results")->capture_default_str();

  int n = 3;
  std::string via = "diagrams";
  auto* hadamard = app.add_subcommand("hadamard", "coefficient of z^n/n! in the Hadamard product of two free exponentials");
  hadamard->add_option("--n", n, "coefficient index")->required()->check(CLI::Range(1, 8));
  hadamard->add_option("--via", via, "diagrams | bell")->check(CLI::IsMember({"diagrams", "bell"}))->capture_default_str();

  auto* diagrams = app.add_subcommand("diagrams", "all diagrams with n lines and their multiplicities");
  diagrams->add_option("--n", n, "number of lines")->required()->check(CLI::Range(1, 12));

  std::string matrix_text;
  bool brute = false;
  auto* mult = app.add_subcommand("mult", "multiplicity of one diagram");
  mult->add_option("--matrix", matrix_text, "packed matrix, rows separated by '/', e.g. \"0 2 1 0/1 1 3 0/0 0 1 2\"")
      ->required();
  mult->add_flag("--brute", brute, "also count by enumerating all partition pairs");

  PairArgs pair_args;
  std::string from_file;
  auto* riordan = app.add_subcommand("riordan", "matrix of the substitution with prefunction f -> g (f o phi)");
  pair_args.attach(riordan);
  riordan->add_option("--from", from_file, "read a unitriangular matrix (json) and recover (g, phi) instead");

  std::string t_text = "1/2";
  auto* power = app.add_subcommand("power", "fractional power M^t of a substitution matrix");
  pair_args.attach(power);
  power->add_option("--t", t_text, "exponent, a fraction like 1/2 or -1")->capture_default_str();

  std::uint64_t probe = 0;
  auto* log = app.add_subcommand("log", "infinitesimal generator log M and its (q d/dz + v) form");
  pair_args.attach(log);
  log->add_option("--probe", probe, "print k (M^{1/k} - I) for this k instead of the limit");

  std::string field_phi = "exp-1";
  std::size_t field_size = 8;
  auto* field = app.add_subcommand("field", "vector field coefficients of the substitution phi");
  field->add_option("--phi", field_phi, "substitution phi (catalog name or EGF coefficients)")->capture_default_str();
  field->add_option("--size", field_size, "matrix size")->capture_default_str()->check(CLI::Range(2, 64));

  std::string family = "equivalence";
  std::size_t ef_size = 7;
  bool with_oracle = false;
  auto* expformula = app.add_subcommand("expformula", "component-count matrix from connected-structure counts");
  expformula->add_option("--family", family, "equivalence | idempotent | counts \"c1,c2,...\"")->capture_default_str();
  expformula->add_option("--size", ef_size, "matrix size")->capture_default_str()->check(CLI::Range(1, 40));
  expformula->add_flag("--oracle", with_oracle, "cross-check rows against a direct enumeration");

  McArgs mc;
  auto* montecarlo = app.add_subcommand("montecarlo", "random unipotent matrices vs. substitution matrices");
  montecarlo->add_option("--action", mc.action, "run | table | exhaustive | conjecture | sweep")
      ->check(CLI::IsMember({"run", "table", "exhaustive", "conjecture", "sweep"}))
      ->capture_default_str();
  montecarlo->add_option("--n", mc.n, "matrix size")->capture_default_str()->check(CLI::Range(2, 40));
  montecarlo->add_option("--r", mc.r, "entries uniform on [1..r]")->capture_default_str()->check(CLI::PositiveNumber);
  montecarlo->add_option("--drawings", mc.drawings, "number of random matrices")->capture_default_str()->check(CLI::PositiveNumber);
  montecarlo->add_option("--seed", mc.seed, "seed; equal seeds give equal output")->capture_default_str();
  montecarlo->add_option("--mode", mc.mode, "exact | tolerance")->check(CLI::IsMember({"exact", "tolerance"}))->capture_default_str();
  montecarlo->add_option("--eps", mc.eps, "relative tolerance for --mode tolerance")->capture_default_str();
  montecarlo->add_flag("--zero-based", mc.zero_based, "entries uniform on [0..r-1] instead");
  montecarlo->add_flag("--timing", mc.timing, "report wall-clock time (output is then not reproducible)");
  montecarlo->add_flag("--exact", mc.with_exact, "also report the exhaustive probability (run action)");
  montecarlo->add_option("--ns", mc.ns, "sizes for --action conjecture, e.g. 3,4,5")->capture_default_str();
  montecarlo->add_option("--rs", mc.rs, "ranges for --action conjecture, e.g. 2-10,20")->capture_default_str();
  montecarlo->add_option("--targets", mc.targets, "acceptance targets for --action sweep")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }
  if (workers == 0) workers = default_workers();
  out.format = format == "csv" ? Format::csv : format == "pretty" ? Format::pretty : Format::json;

  try {
    if (*hadamard) cmd_hadamard(n, via, out);
    else if (*diagrams) cmd_diagrams(n, workers, out);
    else if (*mult) cmd_mult(matrix_text, brute, out);
    else if (*riordan) cmd_riordan(pair_args, from_file, out);
    else if (*power) cmd_power(pair_args, t_text, out);
    else if (*log) cmd_log(pair_args, probe, out);
    else if (*field) cmd_field(field_phi, field_size, out);
    else if (*expformula) cmd_expformula(family, ef_size, with_oracle, out);
    else if (*montecarlo) cmd_montecarlo(mc, workers, out);
  } catch (const ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
