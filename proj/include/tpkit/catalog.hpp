#pragma once

// Registry of named triangles, bundled fixtures and alternate constructions.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/io.hpp"
#include "tpkit/nrec.hpp"
#include "tpkit/riordan.hpp"
#include "tpkit/series.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

enum class Route { riordan, nrec, recurrence };

inline const char* to_string(Route r) {
  switch (r) {
    case Route::riordan: return "riordan";
    case Route::nrec: return "nrec";
    case Route::recurrence: return "recurrence";
  }
  return "?";
}

struct TriangleEntry {
  std::string name;
  Route route = Route::recurrence;
  std::pair<int, int> index_shift{0, 0};  // entry (n, k) is the classical (n + row, k + col)
  std::string notes;
};

/// Parameters for the parametrized families and the truncation order. Every
/// catalog triangle supplies at least rows 0..order.
struct TriangleParams {
  long m = 1;
  long r = 1;
  std::vector<ExactScalar> x;
  std::size_t order = kDefaultOrder;
};

inline const std::vector<TriangleEntry>& catalog_entries() {
  static const std::vector<TriangleEntry> entries{
      {"pascal", Route::riordan, {0, 0}, "binomial coefficients, R[e^t, t]"},
      {"stirling1", Route::nrec, {0, 0}, "signless c(n,k); a_n = 1, b_n = n-1"},
      {"stirling1_B", Route::nrec, {0, 0}, "type B; a_n = 1, b_n = 2n-1"},
      {"stirling2", Route::riordan, {1, 1}, "S(n+1,k+1), R[e^t, e^t-1]"},
      {"stirling2_unshifted", Route::riordan, {0, 0}, "S(n,k), R[1, e^t-1]"},
      {"stirling2_reversed", Route::riordan, {1, 1}, "row reversal of stirling2"},
      {"lah", Route::riordan, {1, 1}, "unsigned Lah L(n+1,k+1), R[1/(1-t)^2, t/(1-t)]"},
      {"idempotent", Route::riordan, {0, 0}, "C(n,k) k^(n-k), B_{n,k}(1,2,3,...)"},
      {"whitney(m,r)", Route::recurrence, {0, 0}, "W(n,k) = W(n-1,k-1) + (r+mk) W(n-1,k)"},
      {"delannoy", Route::nrec, {0, 0}, "a_n = b_n = c_n = 1"},
      {"derangement_A", Route::nrec, {0, 0}, "a_n = 0, b_n = c_n = n-1; row sums are derangement numbers"},
      {"derangement_B", Route::nrec, {0, 0}, "a_n = 1, b_n = c_n = 2(n-1)"},
      {"eulerian", Route::recurrence, {0, 0}, "A(n,k) = (n-k+1) A(n-1,k-1) + (k+1) A(n-1,k)"},
      {"bell_iteration(x)", Route::riordan, {0, 0}, "partial Bell polynomials B_{n,k}(x_1, x_2, ...), R[1, f]"},
  };
  return entries;
}

namespace detail {

struct ParsedName {
  std::string base;
  std::vector<std::string> args;
};

inline ParsedName parse_triangle_name(const std::string& name) {
  ParsedName p;
  auto open = name.find('(');
  if (open == std::string::npos) {
    p.base = name;
    return p;
  }
  if (name.back() != ')') throw error(errc::unknown_triangle, "malformed triangle name '" + name + "'");
  p.base = name.substr(0, open);
  std::string inner = name.substr(open + 1, name.size() - open - 2);
  std::size_t start = 0;
  while (start <= inner.size()) {
    auto comma = inner.find(',', start);
    if (comma == std::string::npos) comma = inner.size();
    std::string arg = inner.substr(start, comma - start);
    arg.erase(std::remove_if(arg.begin(), arg.end(), [](unsigned char c) { return std::isspace(c); }), arg.end());
    if (arg.empty()) throw error(errc::unknown_triangle, "empty argument in '" + name + "'");
    p.args.push_back(arg);
    start = comma + 1;
  }
  return p;
}

inline long parse_long_arg(const std::string& s, const std::string& name) {
  ExactScalar v = ExactScalar::parse(s);
  if (!v.is_integer()) throw error(errc::unknown_triangle, "non-integer parameter in '" + name + "'");
  return static_cast<long>(v.numerator());
}

/// Entry (n, k) of `full` read at (n+1, k+1), for rows 0..last.
inline TriMatrix shifted(std::string name, const TriMatrix& full, std::size_t last) {
  return TriMatrix(
      std::move(name),
      [full](std::size_t n, std::span<const Row>) {
        Row r = full.row(n + 1);
        return Row(r.begin() + 1, r.end());
      },
      last);
}

inline TriMatrix limited(std::string name, const TriMatrix& full, std::size_t last) {
  return TriMatrix(
      std::move(name), [full](std::size_t n, std::span<const Row>) { return full.row(n); }, last);
}

inline TriMatrix eulerian_matrix() {
  return TriMatrix("eulerian", [](std::size_t n, std::span<const Row> prev) {
    Row row(n + 1);
    if (n == 0) {
      row[0] = 1;
      return row;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      if (k >= 1) row[k] += ExactScalar(n - k + 1) * prev[n - 1][k - 1];
      if (k <= n - 1) row[k] += ExactScalar(k + 1) * prev[n - 1][k];
    }
    return row;
  });
}

inline std::vector<ExactScalar> factorials_from(std::size_t first, std::size_t count) {
  std::vector<ExactScalar> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(factorial(first + i));
  return out;
}

}  // namespace detail

/// "whitney" with params becomes "whitney(m,r)"; other names are unchanged.
inline std::string canonical_triangle_name(const std::string& name, const TriangleParams& params = {}) {
  if (name == "whitney") return "whitney(" + std::to_string(params.m) + "," + std::to_string(params.r) + ")";
  if (name == "bell_iteration" && !params.x.empty()) {
    std::string out = "bell_iteration(";
    for (std::size_t i = 0; i < params.x.size(); ++i) out += (i ? "," : "") + params.x[i].str();
    return out + ")";
  }
  return name;
}

inline TriMatrix get_triangle(const std::string& name, const TriangleParams& params = {}) {
  const std::string canon = canonical_triangle_name(name, params);
  const detail::ParsedName p = detail::parse_triangle_name(canon);
  const std::size_t order = std::max<std::size_t>(params.order, 1);
  auto no_args = [&] {
    if (!p.args.empty()) throw error(errc::unknown_triangle, "'" + p.base + "' takes no parameters");
  };

  if (p.base == "whitney") {
    if (p.args.size() != 2) throw error(errc::unknown_triangle, "whitney needs (m,r)");
    TriMatrix w = whitney_matrix(detail::parse_long_arg(p.args[0], canon), detail::parse_long_arg(p.args[1], canon));
    return TriMatrix(
        canon, [w](std::size_t n, std::span<const Row>) { return w.row(n); });
  }
  if (p.base == "bell_iteration") {
    std::vector<ExactScalar> x;
    for (const auto& a : p.args) x.push_back(ExactScalar::parse(a));
    if (x.empty()) throw error(errc::insufficient_sequence, "bell_iteration needs a sequence x");
    return detail::limited(canon, iteration_matrix(x, std::min(order, x.size())), std::min(order, x.size()));
  }
  no_args();
  if (p.base == "pascal") {
    return exponential_to_matrix(ExponentialRiordan(series_exp(order), PowerSeries::variable(order)), "pascal");
  }
  if (p.base == "stirling2") {
    return detail::limited("stirling2", exponential_to_matrix(ExponentialRiordan(series_exp(order), series_expm1(order))),
                           order);
  }
  if (p.base == "stirling2_unshifted") {
    return exponential_to_matrix(ExponentialRiordan(PowerSeries::constant(1, order), series_expm1(order)),
                                 "stirling2_unshifted");
  }
  if (p.base == "stirling2_reversed") {
    TriMatrix s = get_triangle("stirling2", params);
    return detail::limited("stirling2_reversed", reversal(s), order);
  }
  if (p.base == "lah") {
    PowerSeries g = ps_mul(series_geometric(order), series_geometric(order));
    return detail::limited("lah", exponential_to_matrix(ExponentialRiordan(g, series_lah_f(order))), order);
  }
  if (p.base == "idempotent") {
    std::vector<ExactScalar> x;
    for (std::size_t i = 1; i <= order; ++i) x.push_back(ExactScalar(i));
    return detail::limited("idempotent", iteration_matrix(x, order), order);
  }
  if (p.base == "eulerian") return detail::eulerian_matrix();
  for (const auto& preset : nrec_preset_names()) {
    if (p.base == preset && preset != "pascal") return nrec_matrix(nrec_preset(preset, order), order, preset);
  }
  throw error(errc::unknown_triangle, "no triangle named '" + canon + "'");
}

/// Catalog entry for a (possibly parametrized) name.
inline const TriangleEntry& triangle_entry(const std::string& name) {
  const std::string base = detail::parse_triangle_name(name).base;
  for (const auto& e : catalog_entries()) {
    if (e.name == base || e.name.rfind(base + "(", 0) == 0) return e;
  }
  throw error(errc::unknown_triangle, "no triangle named '" + name + "'");
}

/// Closed-form left production matrix for n-recursive presets, which is
/// defined even where the triangle has zero diagonal entries.
inline std::optional<NRecSpec> nrec_spec_for(const std::string& name, std::size_t order) {
  for (const auto& preset : nrec_preset_names())
    if (name == preset) return nrec_preset(preset, order);
  return std::nullopt;
}

struct CatalogProduction {
  FiniteMatrix q;
  std::string route;  // "inverse" or "closed_form"
};

/// Q_m for a catalog triangle: A_m blockdiag(1, A_{m-1})^{-1}, or the
/// closed form for n-recursive presets when A_{m-1} has a zero diagonal entry.
inline CatalogProduction catalog_production(const std::string& name, const TriMatrix& a, std::size_t m) {
  try {
    return {left_production(a, m), "inverse"};
  } catch (const error& e) {
    if (e.code() != errc::singular_diagonal) throw;
    auto spec = nrec_spec_for(name, m);
    if (!spec) throw;
    return {nrec_left_production(*spec, m), "closed_form"};
  }
}

/// A second, independent construction where one exists.
inline std::optional<TriMatrix> alternate_route(const std::string& name, const TriangleParams& params = {}) {
  const std::string canon = canonical_triangle_name(name, params);
  const detail::ParsedName p = detail::parse_triangle_name(canon);
  const std::size_t order = std::max<std::size_t>(params.order, 1);
  const std::size_t up = order + 1;
  if (p.base == "pascal") return nrec_matrix(nrec_preset("pascal", order), order, "pascal/nrec");
  if (p.base == "stirling1") {
    return detail::limited("stirling1/bell", iteration_matrix(detail::factorials_from(0, order), order), order);
  }
  if (p.base == "stirling2") {
    return detail::shifted("stirling2/bell", iteration_matrix(std::vector<ExactScalar>(up, 1), up), order);
  }
  if (p.base == "stirling2_unshifted") return whitney_matrix(1, 0);
  if (p.base == "stirling2_reversed") return reversal(whitney_matrix(1, 1));
  if (p.base == "lah") return detail::shifted("lah/bell", iteration_matrix(detail::factorials_from(1, up), up), order);
  if (p.base == "idempotent") {
    PowerSeries f = ps_mul(PowerSeries::variable(order), series_exp(order));
    return exponential_to_matrix(ExponentialRiordan(PowerSeries::constant(1, order), f), "idempotent/riordan");
  }
  if (p.base == "whitney") {
    const long m = detail::parse_long_arg(p.args.at(0), canon), r = detail::parse_long_arg(p.args.at(1), canon);
    return exponential_to_matrix(whitney_riordan(m, r, order), canon + "/riordan");
  }
  if (p.base == "delannoy") {
    PowerSeries h = ps_mul(PowerSeries::variable(order) + PowerSeries({0, 0, 1}, order), series_geometric(order));
    return ordinary_to_matrix(OrdinaryRiordan(series_geometric(order), h), "delannoy/riordan");
  }
  if (p.base == "eulerian") {
    // sum_j (-1)^j C(n+2, j) (k+1-j)^(n+1)
    return TriMatrix::from_entries("eulerian/sum", [](std::size_t n, std::size_t k) {
      ExactScalar s = 0;
      for (std::size_t j = 0; j <= k; ++j) {
        ExactScalar term = binomial(n + 2, j) * pow(ExactScalar(k + 1 - j), n + 1);
        s += j % 2 ? -term : term;
      }
      return s;
    });
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// File stem for a triangle name: non-alphanumerics become '_'.
inline std::string fixture_stem(const std::string& name) {
  std::string out;
  for (unsigned char c : name) {
    if (std::isalnum(c) || c == '_') {
      out += static_cast<char>(c);
    } else if (c == '-') {
      out += 'm';
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

struct Fixture {
  std::string name;
  std::pair<int, int> index_shift{0, 0};
  std::vector<Row> rows;
};

inline Fixture load_fixture(const std::string& name, const std::filesystem::path& dir) {
  const auto path = dir / (fixture_stem(name) + ".json");
  std::ifstream in(path);
  if (!in) throw error(errc::missing_fixture, "no fixture " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw error(errc::parse_error, path.string() + ": " + e.what());
  }
  Fixture f;
  f.name = j.at("name").get<std::string>();
  auto shift = j.at("index_shift");
  f.index_shift = {shift.at(0).get<int>(), shift.at(1).get<int>()};
  for (const auto& r : j.at("rows")) f.rows.push_back(row_from_json(r));
  return f;
}

struct CrosscheckMismatch {
  std::size_t n = 0, k = 0;
  std::string expected, actual;
};

struct CrosscheckReport {
  std::string name;
  std::size_t rows = 0;
  bool pass = true;
  std::optional<CrosscheckMismatch> mismatch;
};

/// Compares rows 0..rows-1 of the constructor output with the fixture.
inline CrosscheckReport crosscheck(const std::string& name, std::size_t rows, const std::filesystem::path& fixture_dir,
                                   const TriangleParams& params = {}) {
  const std::string canon = canonical_triangle_name(name, params);
  Fixture fx = load_fixture(canon, fixture_dir);
  if (fx.rows.size() < rows) {
    throw error(errc::index_out_of_range,
                "fixture for '" + canon + "' has " + std::to_string(fx.rows.size()) + " rows, asked for " +
                    std::to_string(rows));
  }
  TriangleParams p = params;
  p.order = std::max(p.order, rows);
  TriMatrix t = get_triangle(canon, p);
  CrosscheckReport rep{canon, rows, true, std::nullopt};
  if (fx.index_shift != triangle_entry(canon).index_shift) {
    rep.pass = false;
    rep.mismatch = CrosscheckMismatch{0, 0, "index_shift", "index_shift"};
    return rep;
  }
  for (std::size_t n = 0; n < rows && rep.pass; ++n) {
    Row got = t.row(n);
    const Row& want = fx.rows[n];
    for (std::size_t k = 0; k < std::max(got.size(), want.size()); ++k) {
      std::string g = k < got.size() ? got[k].str() : "-", w = k < want.size() ? want[k].str() : "-";
      if (g != w) {
        rep.pass = false;
        rep.mismatch = CrosscheckMismatch{n, k, w, g};
        break;
      }
    }
  }
  return rep;
}

/// Names with a bundled fixture, in registry order.
inline std::vector<std::string> fixture_names() {
  return {"pascal",        "stirling1",     "stirling1_B",  "stirling2",
          "stirling2_unshifted", "stirling2_reversed", "lah", "idempotent",
          "whitney(1,1)",  "whitney(2,1)",  "whitney(2,2)", "whitney(1,3)",
          "delannoy",      "derangement_A", "derangement_B", "eulerian",
          "bell_iteration(1,2,3,4,5,6,7,8)"};
}

inline json to_json(const CrosscheckReport& r) {
  json out{{"name", r.name}, {"rows", r.rows}, {"pass", r.pass}, {"mismatch", nullptr}};
  if (r.mismatch) {
    out["mismatch"] = json{{"n", r.mismatch->n}, {"k", r.mismatch->k}, {"expected", r.mismatch->expected},
                           {"actual", r.mismatch->actual}};
  }
  return out;
}

}  // namespace tpkit
