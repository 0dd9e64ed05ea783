#pragma once

// JSON encodings. Exact values travel as strings "p" or "p/q".

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "tpkit/error.hpp"
#include "tpkit/exact.hpp"
#include "tpkit/network.hpp"
#include "tpkit/nrec.hpp"
#include "tpkit/production.hpp"
#include "tpkit/series.hpp"
#include "tpkit/trimat.hpp"

namespace tpkit {

using json = nlohmann::ordered_json;

inline json to_json(const ExactScalar& x) { return x.str(); }

/// Accepts "p/q" strings and JSON integers.
inline ExactScalar scalar_from_json(const json& j) {
  if (j.is_string()) return ExactScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return ExactScalar(j.get<long long>());
  throw error(errc::parse_error, "expected an exact rational, got " + j.dump());
}

inline json to_json(const Row& r) {
  json out = json::array();
  for (const auto& x : r) out.push_back(x.str());
  return out;
}

inline Row row_from_json(const json& j) {
  if (!j.is_array()) throw error(errc::parse_error, "expected an array, got " + j.dump());
  Row r;
  for (const auto& x : j) r.push_back(scalar_from_json(x));
  return r;
}

inline json to_json(const PowerSeries& s) { return json{{"order", s.order()}, {"coeffs", to_json(s.coeffs())}}; }

inline PowerSeries series_from_json(const json& j) {
  Row c = row_from_json(j.at("coeffs"));
  std::size_t order = j.contains("order") ? j.at("order").get<std::size_t>() : (c.empty() ? 0 : c.size() - 1);
  return PowerSeries(std::move(c), order);
}

inline json to_json(const FiniteMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(to_json(m.row(i)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline FiniteMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
  const json& e = j.at("entries");
  if (e.size() != rows) throw error(errc::dimension_mismatch, "entries has " + std::to_string(e.size()) + " rows");
  FiniteMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Row r = row_from_json(e[i]);
    if (r.size() != cols) throw error(errc::dimension_mismatch, "row " + std::to_string(i) + " has wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = r[k];
  }
  return m;
}

/// Lower triangle of A_{rows-1} as ragged rows.
inline json triangle_json(const TriMatrix& a, std::size_t rows) {
  json out = json::array();
  for (std::size_t n = 0; n < rows; ++n) out.push_back(to_json(a.row(n)));
  return out;
}

inline json to_json(const MinorWitness& w) {
  return json{{"rows", w.rows}, {"cols", w.cols}, {"value", w.value.str()}};
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

inline json to_json(const TPCertificate& c) {
  return json{{"tp", c.tp}, {"witness", optional_json(c.witness)}, {"minors_checked", c.minors_checked}};
}

inline json to_json(const ThmMainReport& r) {
  return json{{"m", r.m},
              {"minor_cap", r.minor_cap},
              {"hypothesis_tp", r.hypothesis_tp},
              {"A_tp", r.A_tp},
              {"rev_tp", r.rev_tp},
              {"rows_real_rooted", r.rows_real_rooted},
              {"witness", optional_json(r.hypothesis_witness)},
              {"A_witness", optional_json(r.A_witness)},
              {"rev_witness", optional_json(r.rev_witness)},
              {"first_non_real_rooted_row", r.first_non_real_rooted_row ? json(*r.first_non_real_rooted_row) : json(nullptr)},
              {"minors_checked", r.minors_checked}};
}

inline json to_json(const ThmTReport& r) {
  json out{{"pass", r.pass}, {"pairs_checked", r.pairs_checked}, {"mismatch", nullptr}};
  if (r.mismatch) {
    const auto& m = *r.mismatch;
    out["mismatch"] = json{{"n", m.n},
                           {"r", m.r},
                           {"i", m.i},
                           {"j", m.j},
                           {"toeplitz_side", m.toeplitz_side.str()},
                           {"production_side", m.production_side.str()}};
  }
  return out;
}

inline json to_json(const Prop52Report& r) {
  json out{{"order", r.order},
           {"identity_holds", r.identity_holds},
           {"diagonal_nonzero", r.diagonal_nonzero},
           {"production_matches", r.production_matches ? json(*r.production_matches) : json(nullptr)},
           {"reversal_holds", r.reversal_holds},
           {"first_mismatch", nullptr},
           {"pass", r.pass()}};
  if (r.first_mismatch) out["first_mismatch"] = {r.first_mismatch->first, r.first_mismatch->second};
  return out;
}

inline json to_json(const Vertex& v) { return json::array({v.column, v.height}); }

/// Vertices, edges (by vertex index), sources and sinks in their stored order.
inline json to_json(const PlanarNetwork& net) {
  json vs = json::array(), es = json::array(), src = json::array(), snk = json::array();
  for (const auto& v : net.vertices()) vs.push_back(to_json(v));
  for (const auto& e : net.edges()) es.push_back(json{{"from", e.from}, {"to", e.to}, {"weight", e.weight.str()}});
  for (auto s : net.sources()) src.push_back(s);
  for (auto t : net.sinks()) snk.push_back(t);
  return json{{"vertices", vs}, {"edges", es}, {"sources", src}, {"sinks", snk}};
}

/// {"a": [...], "b": [...], "c": [...] | "zero"}; a[0] = a_1, c[0] = c_2.
inline NRecSpec nrec_spec_from_json(const json& j) {
  NRecSpec s;
  s.a = row_from_json(j.at("a"));
  s.b = row_from_json(j.at("b"));
  const json& c = j.at("c");
  if (c.is_string() && c.get<std::string>() == "zero") {
    s.c_is_zero = true;
  } else {
    s.c = row_from_json(c);
  }
  return s;
}

inline json to_json(const NRecSpec& s) {
  return json{{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"c", s.c_is_zero ? json("zero") : to_json(s.c)}};
}

}  // namespace tpkit
